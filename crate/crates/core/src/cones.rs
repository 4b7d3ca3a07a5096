//! Movable cone and interior walls of `X^[n]` for a K3 surface `X` with
//! `Pic X = Z·H`, `H·H = 2d`.
//!
//! All slopes `t` refer to rays `H^[n] - t·B`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, int, isqrt};
use crate::error::{invalid, Error, Result};
use crate::lattice::{hilbert_classes, wall_ray_from_class, MukaiVector};
use crate::pell::{first_congruent_to_unit, solve_two_term, PellSolution};

/// Hard ceiling on the enumeration range for `m`, whatever the default rule
/// asks for.
pub const M_MAX_CEILING: u64 = 100_000;

/// Degrees `H·H` of the standard movable-cone table for `X^[3]`.
pub const TABLE1_DEGREES: [u64; 9] = [2, 4, 6, 8, 10, 12, 14, 16, 24];

/// Perfect-square degrees `a² > 4` covered by the same table.
pub const TABLE1_SQUARE_DEGREES: [u64; 3] = [36, 64, 100];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `d(n-1)` is a perfect square.
    SquareRatio,
    /// `(n-1)x² - dy² = 1` is solvable.
    TwoTermPell,
    /// Pell solution of `x² - d(n-1)y² = 1` with `x ≡ ±1 (mod n-1)`.
    FilteredPell,
}

impl CaseTag {
    pub fn number(self) -> u8 {
        match self {
            Self::SquareRatio => 1,
            Self::TwoTermPell => 2,
            Self::FilteredPell => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SquareRatio => "square-ratio",
            Self::TwoTermPell => "two-term-pell",
            Self::FilteredPell => "filtered-pell",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryWitness {
    /// `k/h = √(d/(n-1))` in lowest terms.
    Ratio {
        k: BigInt,
        h: BigInt,
    },
    Pell(PellSolution),
}

impl BoundaryWitness {
    /// The "x" component: `k` for a ratio, `x₁` for a Pell solution.
    pub fn x(&self) -> &BigInt {
        match self {
            Self::Ratio { k, .. } => k,
            Self::Pell(sol) => sol.x(),
        }
    }

    pub fn y(&self) -> &BigInt {
        match self {
            Self::Ratio { h, .. } => h,
            Self::Pell(sol) => sol.y(),
        }
    }
}

impl fmt::Display for BoundaryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ratio { k, h } => write!(f, "k/h = {k}/{h}"),
            Self::Pell(sol) => write!(f, "{sol}"),
        }
    }
}

/// `Mov(X^[n]) = ⟨H^[n], H^[n] - mu·B⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovableCone {
    pub n: u64,
    pub d: u64,
    pub mu: BigRational,
    pub case: CaseTag,
    pub witness: BoundaryWitness,
}

impl MovableCone {
    /// Recomputes `mu` from the witness under the case formula.
    pub fn witness_slope(&self) -> BigRational {
        let d = BigInt::from(self.d);
        let n1 = BigInt::from(self.n - 1);
        match (&self.case, &self.witness) {
            (_, BoundaryWitness::Ratio { k, h }) => BigRational::new(k.clone(), h.clone()),
            (CaseTag::TwoTermPell, BoundaryWitness::Pell(s)) => {
                BigRational::new(&d * s.y(), s.x() * &n1)
            }
            (_, BoundaryWitness::Pell(s)) => BigRational::new(&d * s.y(), s.x().clone()),
        }
    }
}

fn check_nd(n: u64, d: u64) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!("n = {n}: Hilbert schemes need n >= 2")));
    }
    if d == 0 {
        return Err(invalid("half-degree d must be positive"));
    }
    Ok(())
}

/// The nontrivial boundary ray of `Mov(X^[n])`, by the three-case analysis
/// applied in order.
pub fn movable_boundary(n: u64, d: u64) -> Result<MovableCone> {
    check_nd(n, d)?;
    let n1 = BigInt::from(n - 1);
    let dd = BigInt::from(d);
    let product = &dd * &n1;

    // d = (k/h)²(n-1) for rational k/h iff d(n-1) is a square; then
    // k/h = √(d(n-1)) / (n-1).
    if let Some(root) = exact_sqrt(&product) {
        let mu = BigRational::new(root, n1);
        let witness = BoundaryWitness::Ratio {
            k: mu.numer().clone(),
            h: mu.denom().clone(),
        };
        return Ok(MovableCone {
            n,
            d,
            mu,
            case: CaseTag::SquareRatio,
            witness,
        });
    }

    if let Some(sol) = solve_two_term(n1.clone(), dd.clone())? {
        let mu = BigRational::new(&dd * sol.y(), sol.x() * &n1);
        return Ok(MovableCone {
            n,
            d,
            mu,
            case: CaseTag::TwoTermPell,
            witness: BoundaryWitness::Pell(sol),
        });
    }

    // Isotropic w with w·v = 2 give x = ±(r(n-1) - 1), so both residues ±1
    // occur; requiring only x ≡ -1 leaves e.g. n = 4, d = 4 unresolved.
    match first_congruent_to_unit(product, n - 1)? {
        Some(sol) => {
            let mu = BigRational::new(&dd * sol.y(), sol.x().clone());
            Ok(MovableCone {
                n,
                d,
                mu,
                case: CaseTag::FilteredPell,
                witness: BoundaryWitness::Pell(sol),
            })
        }
        None => Err(Error::ExhaustedCases { n, d }),
    }
}

/// Enumeration limits for [`enumerate_walls`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WallCaps {
    /// Classes with `1 <= |m| <= m_max` are enumerated.
    pub m_max: u64,
}

impl WallCaps {
    /// `max(8, 4·x₁)` for the boundary witness, clamped to [`M_MAX_CEILING`].
    /// The flag reports whether the clamp was hit.
    pub fn default_for(cone: &MovableCone) -> (Self, bool) {
        let wanted = cone.witness.x() * 4u32;
        let wanted = wanted.max(BigInt::from(8));
        match wanted.to_u64() {
            Some(m) if m <= M_MAX_CEILING => (Self { m_max: m }, false),
            _ => (
                Self {
                    m_max: M_MAX_CEILING,
                },
                true,
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub slope: BigRational,
    pub witness: MukaiVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSet {
    pub cone: MovableCone,
    /// Strictly increasing slopes in `(0, mu)`.
    pub walls: Vec<Wall>,
    pub caps: WallCaps,
    /// The default cap rule was clamped to [`M_MAX_CEILING`].
    pub clamped: bool,
    /// A wall first appeared in the last quarter of the `m` range.
    pub cap_warning: bool,
    /// A class cutting out the boundary ray itself, if one was met.
    pub boundary_witness: Option<MukaiVector>,
}

impl WallSet {
    pub fn slopes(&self) -> Vec<BigRational> {
        self.walls.iter().map(|w| w.slope.clone()).collect()
    }
}

/// Dedup key: smaller `(|m|, |r|)` wins, then smaller `r`, then smaller `m`.
fn witness_key(a: &MukaiVector) -> (BigInt, BigInt, BigInt, BigInt) {
    (a.m.abs(), a.r.abs(), a.r.clone(), a.m.clone())
}

/// Classes `a` with `a·v = k` and the given `a·a` that are attached to
/// `|m| = big_m`, as `(a, den)` with `den = s + r(n-1)`. The sign of `m` is
/// taken opposite to `den` so the orthogonal ray has positive slope.
fn classes_with_square(n: u64, d: u64, big_m: &BigInt, k: i64, square: i64) -> Vec<MukaiVector> {
    // a·a = 2d m² - 2r(r(n-1) - k), and with den = 2r(n-1) - k:
    // den² = 4(n-1)(d m² - a·a/2) + k².
    debug_assert!(square % 2 == 0);
    let n1 = BigInt::from(n - 1);
    let disc = BigInt::from(4) * &n1 * (BigInt::from(d) * big_m * big_m - square / 2) + k * k;
    let Some(root) = exact_sqrt(&disc) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let roots = if root.is_zero() {
        vec![root]
    } else {
        vec![-root.clone(), root]
    };
    for den in roots {
        let (r, rem) = (&den + k).div_rem(&(&n1 * 2u32));
        if !rem.is_zero() {
            continue;
        }
        let s = &r * &n1 - k;
        let m = if den.is_positive() {
            -big_m
        } else {
            big_m.clone()
        };
        out.push(MukaiVector { r, m, s });
    }
    out
}

/// Walls of `Mov(X^[n])` with the default cap rule (overridable).
pub fn enumerate_walls(n: u64, d: u64, caps: Option<WallCaps>) -> Result<WallSet> {
    check_nd(n, d)?;
    let cone = movable_boundary(n, d)?;
    let (default_caps, default_clamped) = WallCaps::default_for(&cone);
    let (caps, clamped) = match caps {
        Some(c) => (c, false),
        None => (default_caps, default_clamped),
    };
    if caps.m_max == 0 {
        return Err(invalid("m_max must be at least 1"));
    }
    let v = hilbert_classes(n)?.v;
    let n1 = BigInt::from(n - 1);
    let two_n1: BigInt = &n1 * 2u32;
    let dd = BigInt::from(d);
    let mu_num = cone.mu.numer().clone();
    let mu_den = cone.mu.denom().clone();
    let last_quarter = caps.m_max - caps.m_max / 4;

    let mut found: BTreeMap<BigRational, MukaiVector> = BTreeMap::new();
    let mut boundary: Option<MukaiVector> = None;
    let mut cap_warning = false;

    for m_abs in 1..=caps.m_max {
        let big_m = BigInt::from(m_abs);
        let two_dm: BigInt = &dd * &big_m * 2u32;
        for k in 0..n as i64 {
            // Wall classes satisfy a·a >= -2 and 0 <= a·v = k <= n-1. With
            // den = s + r(n-1) = 2r(n-1) - k the slope is t = -2dm/den, so
            //   |den| <= √(4(n-1)(d m² + 1) + k²)   (from a·a >= -2)
            //   |den| >= 2d|m|/mu                   (from t <= mu)
            let upper = isqrt(&(BigInt::from(4) * &n1 * (&dd * &big_m * &big_m + 1u32) + k * k));
            let lower = (&two_dm * &mu_den).div_ceil(&mu_num);
            let mut j = lower;
            while j <= upper {
                for den in [-j.clone(), j.clone()] {
                    let (r, rem) = (&den + k).div_rem(&two_n1);
                    if !rem.is_zero() {
                        continue;
                    }
                    let s = &r * &n1 - k;
                    let m = if den.is_positive() {
                        -&big_m
                    } else {
                        big_m.clone()
                    };
                    let a = MukaiVector { r, m, s };
                    if a.square(d) < BigInt::from(-2) {
                        continue;
                    }
                    debug_assert_eq!(a.pairing(&v, d), BigInt::from(k));
                    let slope = BigRational::new(two_dm.clone(), j.clone());
                    if slope == cone.mu {
                        if boundary
                            .as_ref()
                            .is_none_or(|b| witness_key(&a) < witness_key(b))
                        {
                            boundary = Some(a);
                        }
                        continue;
                    }
                    match found.get_mut(&slope) {
                        Some(existing) => {
                            if witness_key(&a) < witness_key(existing) {
                                *existing = a;
                            }
                        }
                        None => {
                            if m_abs > last_quarter && m_abs > 1 {
                                cap_warning = true;
                            }
                            found.insert(slope, a);
                        }
                    }
                }
                j += 1u32;
            }
        }
    }

    let walls = found
        .into_iter()
        .map(|(slope, witness)| Wall { slope, witness })
        .collect();
    Ok(WallSet {
        cone,
        walls,
        caps,
        clamped,
        cap_warning,
        boundary_witness: boundary,
    })
}

/// Re-derives a wall from its witness: `a·a >= -2`, `0 <= a·v <= n-1`, and
/// the orthogonal ray has the recorded slope.
pub fn validate_wall(wall: &Wall, n: u64, d: u64) -> Result<bool> {
    let v = hilbert_classes(n)?.v;
    let a = &wall.witness;
    let av = a.pairing(&v, d);
    let ray = wall_ray_from_class(a, n, d)?;
    let slope_ok = ray.ray().and_then(|r| r.slope()).as_ref() == Some(&wall.slope);
    Ok(a.square(d) >= BigInt::from(-2)
        && !av.is_negative()
        && av <= BigInt::from(n - 1)
        && slope_ok)
}

fn default_search_cap(n: u64, d: u64) -> Result<u64> {
    let cone = movable_boundary(n, d)?;
    Ok(WallCaps::default_for(&cone).0.m_max)
}

/// A spherical class `s` (`s·s = -2`) with `1 <= s·v <= n-1` and `m != 0`,
/// searched over `1 <= |m| <= cap`; the default cap follows [`WallCaps`].
///
/// Classes with `m = 0` such as `(1, 0, 1)` only cut out the Hilbert–Chow
/// ray and are excluded.
pub fn exists_spherical_obstruction(n: u64, d: u64) -> Result<Option<MukaiVector>> {
    let cap = default_search_cap(n, d)?;
    exists_spherical_obstruction_capped(n, d, cap)
}

pub fn exists_spherical_obstruction_capped(
    n: u64,
    d: u64,
    cap: u64,
) -> Result<Option<MukaiVector>> {
    check_nd(n, d)?;
    for m_abs in 1..=cap {
        let big_m = BigInt::from(m_abs);
        for k in 1..n as i64 {
            if let Some(a) = pick(classes_with_square(n, d, &big_m, k, -2)) {
                return Ok(Some(a));
            }
        }
    }
    Ok(None)
}

/// A splitting `v = a + b` into positive classes: `a·a, b·b >= 0`,
/// `a·v, b·v > 0`, with `a·b > 0` so that `⟨v, a⟩` is hyperbolic. Searched
/// over `1 <= |m| <= cap` for the `m` component of `a`.
///
/// `a·b = a·v - a·a`, so `a·b > 0` bounds `a·a < a·v < v·v`, and
/// `b·b = v·v - 2a·v + a·a`.
pub fn exists_positive_decomposition(n: u64, d: u64) -> Result<Option<(MukaiVector, MukaiVector)>> {
    let cap = default_search_cap(n, d)?;
    exists_positive_decomposition_capped(n, d, cap)
}

pub fn exists_positive_decomposition_capped(
    n: u64,
    d: u64,
    cap: u64,
) -> Result<Option<(MukaiVector, MukaiVector)>> {
    check_nd(n, d)?;
    let v = hilbert_classes(n)?.v;
    let v2 = 2 * (n as i64 - 1);
    for m_abs in 1..=cap {
        let big_m = BigInt::from(m_abs);
        for k in 1..v2 {
            let mut square = 0;
            while square < k {
                if v2 - 2 * k + square >= 0 {
                    if let Some(a) = pick(classes_with_square(n, d, &big_m, k, square)) {
                        let b = &v - &a;
                        return Ok(Some((a, b)));
                    }
                }
                square += 2;
            }
        }
    }
    Ok(None)
}

fn pick(mut classes: Vec<MukaiVector>) -> Option<MukaiVector> {
    classes.sort_by_key(witness_key);
    classes.into_iter().next()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub h2: u64,
    pub walls: Vec<BigRational>,
    pub mu: BigRational,
    pub case: CaseTag,
    pub cap_warning: bool,
}

/// Movable cone and interior walls of `X^[3]` for each even degree `H·H`.
pub fn table1(degrees: &[u64]) -> Result<Vec<Table1Row>> {
    degrees
        .iter()
        .map(|&h2| {
            if h2 == 0 || h2 % 2 == 1 {
                return Err(invalid(format!("degree {h2} must be even and positive")));
            }
            let set = enumerate_walls(3, h2 / 2, None)?;
            Ok(Table1Row {
                h2,
                walls: set.slopes(),
                mu: set.cone.mu.clone(),
                case: set.cone.case,
                cap_warning: set.cap_warning,
            })
        })
        .collect()
}

/// `alpha_m = 2·mu(X^[3])`, so the boundary ray is `H^[3] - (alpha_m/2)·B`.
pub fn szemberg_alpha(d: u64) -> Result<BigRational> {
    Ok(movable_boundary(3, d)?.mu * int(2))
}
