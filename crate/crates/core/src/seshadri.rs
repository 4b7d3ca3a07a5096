//! Seshadri constants of Picard-rank-1 surfaces: known values, lower bounds
//! coming from nef divisors on Hilbert schemes, and their relation to the
//! walls of `Mov(X^[3])`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use crate::arith::{ceil_sqrt_u64, decimal, int, is_square_u64, isqrt_u64, ratio, sqrt_decimal};
use crate::cones::enumerate_walls;
use crate::error::{invalid, Error, Result};
use crate::pell::pell_fundamental;

/// Degrees of the published bound comparison table.
pub const TABLE2_DEGREES: [u64; 13] = [8, 14, 22, 24, 32, 34, 58, 60, 62, 74, 76, 78, 80];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    K3,
    GeneralType,
    Enriques,
}

/// A surface with `Pic = Z·H`, `K_X = a·H`, and `b` minimal with `b·H`
/// effective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    kind: SurfaceKind,
    h2: u64,
    a: u64,
    b: u64,
}

impl SurfaceSpec {
    pub fn new(kind: SurfaceKind, h2: u64, a: u64, b: u64) -> Result<Self> {
        if h2 == 0 {
            return Err(invalid("H^2 must be positive"));
        }
        if b == 0 {
            return Err(invalid("b must be positive"));
        }
        match kind {
            SurfaceKind::K3 if a != 0 || h2 % 2 == 1 => {
                Err(invalid("K3 surfaces have K = 0 and even H^2"))
            }
            SurfaceKind::GeneralType if a == 0 => {
                Err(invalid("surfaces of general type need K = aH with a >= 1"))
            }
            _ => Ok(Self { kind, h2, a, b }),
        }
    }

    pub fn k3(h2: u64) -> Result<Self> {
        Self::new(SurfaceKind::K3, h2, 0, 1)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn h2(&self) -> u64 {
        self.h2
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Known,
    Conjectural,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Known => "known",
            Self::Conjectural => "conjectural",
            Self::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeshadriRecord {
    /// `None` exactly when the status is [`Status::Unknown`].
    pub value: Option<BigRational>,
    pub status: Status,
    pub source: &'static str,
}

impl SeshadriRecord {
    fn new(value: BigRational, status: Status, source: &'static str) -> Self {
        Self {
            value: Some(value),
            status,
            source,
        }
    }

    fn unknown() -> Self {
        Self {
            value: None,
            status: Status::Unknown,
            source: "",
        }
    }
}

/// Lookup table of single-point Seshadri constants `ε(H)` on very general
/// surfaces with `Pic = Z·H`.
pub fn known_epsilon(spec: &SurfaceSpec, phi: Option<u64>) -> Result<SeshadriRecord> {
    let h2 = spec.h2;
    match spec.kind {
        SurfaceKind::Enriques => {
            let phi = phi.ok_or(Error::MissingPhi)?;
            if phi == 0 || phi * phi > h2 {
                return Err(invalid(format!(
                    "phi(H) = {phi} must satisfy 0 < phi^2 <= H^2"
                )));
            }
            Ok(SeshadriRecord::new(
                int(phi),
                Status::Known,
                "Galati-Knutsen (Enriques, eps = phi)",
            ))
        }
        SurfaceKind::GeneralType => Ok(SeshadriRecord::unknown()),
        SurfaceKind::K3 => Ok(match h2 {
            2 => SeshadriRecord::new(int(1), Status::Known, "Bauer et al. survey"),
            4 => SeshadriRecord::new(int(2), Status::Known, "Bauer (quartics)"),
            6 => SeshadriRecord::new(int(2), Status::Known, "Galati-Knutsen"),
            8 => SeshadriRecord::new(ratio(8, 3), Status::Known, "Galati-Knutsen"),
            14 => SeshadriRecord::new(
                ratio(14, 4),
                Status::Conjectural,
                "Galati-Knutsen (evidence)",
            ),
            24 => SeshadriRecord::new(
                ratio(24, 5),
                Status::Conjectural,
                "Galati-Knutsen (evidence)",
            ),
            _ if is_square_u64(h2) => {
                SeshadriRecord::new(int(isqrt_u64(h2)), Status::Known, "Knutsen (square degree)")
            }
            _ => SeshadriRecord::unknown(),
        }),
    }
}

/// A lower bound `value` attained at the integer parameter `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub n: u64,
    pub value: BigRational,
}

fn is_feasible(h2: u64, n: u64) -> bool {
    (n as u128) * (n as u128) + n as u128 >= h2 as u128
}

/// `ε(H) >= 2·H²·n / ((a+1)H² + n(n+1) + 2)` for every `n` with
/// `n² + n >= H²`.
pub fn bound_at_n(h2: u64, a: u64, n: u64) -> Result<BigRational> {
    if h2 == 0 || n == 0 {
        return Err(invalid("H^2 and n must be positive"));
    }
    if !is_feasible(h2, n) {
        return Err(Error::InfeasibleN { n, h2 });
    }
    Ok(bound_formula(h2 as u128, a as u128, n as u128))
}

fn bound_formula(h2: u128, a: u128, n: u128) -> BigRational {
    let num = BigInt::from(2 * h2 * n);
    let den = BigInt::from((a + 1) * h2) + BigInt::from(n) * BigInt::from(n + 1) + 2;
    BigRational::new(num, den)
}

/// K3 bound with `n = ⌈√(H² + 2)⌉`.
pub fn bound_k3(h2: u64) -> Result<Bound> {
    if h2 == 0 || h2 % 2 == 1 {
        return Err(invalid(format!("K3 degree {h2} must be even and positive")));
    }
    let n = ceil_sqrt_u64(h2 + 2);
    Ok(Bound {
        n,
        value: bound_at_n(h2, 0, n)?,
    })
}

/// General-type bound with `K = aH`, `b` minimal with `bH` effective:
/// `2b·H²·α / ((ab+b²)H² + α(α+1) + 2)` with `α = ⌈√((ab+b²)H² + 2)⌉`.
pub fn bound_general_type(h2: u64, a: u64, b: u64) -> Result<Bound> {
    if h2 == 0 || b == 0 {
        return Err(invalid("H^2 and b must be positive"));
    }
    let c = (a * b + b * b)
        .checked_mul(h2)
        .ok_or_else(|| invalid("(ab + b^2) H^2 overflows"))?;
    let alpha = ceil_sqrt_u64(c + 2);
    let num = BigInt::from(2u128 * b as u128 * h2 as u128 * alpha as u128);
    let den = BigInt::from(c) + BigInt::from(alpha) * BigInt::from(alpha + 1) + 2;
    Ok(Bound {
        n: alpha,
        value: BigRational::new(num, den),
    })
}

/// Best bound over feasible `n` in `[n_min, ⌈√((a+1)H² + 2)⌉ + 1]`; ties go
/// to the smaller `n`.
pub fn best_bound(h2: u64, a: u64) -> Result<Bound> {
    if h2 == 0 {
        return Err(invalid("H^2 must be positive"));
    }
    let mut n_min = isqrt_u64(h2).max(1);
    while !is_feasible(h2, n_min) {
        n_min += 1;
    }
    while n_min > 1 && is_feasible(h2, n_min - 1) {
        n_min -= 1;
    }
    let c = (a + 1)
        .checked_mul(h2)
        .ok_or_else(|| invalid("(a + 1) H^2 overflows"))?;
    let n_max = (ceil_sqrt_u64(c + 2) + 1).max(n_min);
    let mut best = Bound {
        n: n_min,
        value: bound_at_n(h2, a, n_min)?,
    };
    for n in n_min + 1..=n_max {
        let value = bound_at_n(h2, a, n)?;
        if value > best.value {
            best = Bound { n, value };
        }
    }
    Ok(best)
}

/// `⌊√H²⌋`, the general K3 lower bound it is compared against.
pub fn knutsen_bound(h2: u64) -> u64 {
    isqrt_u64(h2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2Row {
    pub h2: u64,
    pub n: u64,
    pub bound: BigRational,
    pub bound_decimal: String,
    pub knutsen: u64,
    pub sqrt_decimal: String,
}

pub fn table2(degrees: &[u64], places: u32) -> Result<Vec<Table2Row>> {
    degrees
        .iter()
        .map(|&h2| {
            let b = bound_k3(h2)?;
            Ok(Table2Row {
                h2,
                n: b.n,
                bound_decimal: decimal(&b.value, places),
                bound: b.value,
                knutsen: knutsen_bound(h2),
                sqrt_decimal: sqrt_decimal(&BigInt::from(h2), places),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ScanOptions {
    /// Keep even-square degrees, where `ε = √H²` is known exactly.
    pub include_squares: bool,
    /// Worker threads; `None` or `Some(1)` runs sequentially.
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanSummary {
    pub better: u64,
    pub total: u64,
}

impl ScanSummary {
    /// `None` for an empty scan.
    pub fn fraction(&self) -> Option<f64> {
        (self.total > 0).then(|| self.better as f64 / self.total as f64)
    }

    pub fn fraction_exact(&self) -> Option<BigRational> {
        (self.total > 0).then(|| ratio(self.better, self.total))
    }
}

/// Whether the K3 bound at degree `h2` strictly beats `⌊√H²⌋`.
///
/// Integer-only restatement of `bound_k3(h2).value > knutsen_bound(h2)`.
fn k3_bound_beats_knutsen(h2: u64) -> bool {
    let n = ceil_sqrt_u64(h2 + 2) as u128;
    let h = h2 as u128;
    let floor = isqrt_u64(h2) as u128;
    2 * h * n > floor * (h + n * (n + 1) + 2)
}

fn scan_range(lo: u64, hi: u64, include_squares: bool) -> ScanSummary {
    let mut better = 0;
    let mut total = 0;
    let mut h2 = lo;
    while h2 <= hi {
        if include_squares || !is_square_u64(h2) {
            total += 1;
            if k3_bound_beats_knutsen(h2) {
                better += 1;
            }
        }
        h2 += 2;
    }
    ScanSummary { better, total }
}

/// Counts even degrees `4 <= H² <= max_h2` where the K3 bound beats
/// `⌊√H²⌋`.
pub fn scan_comparison(max_h2: u64, opts: ScanOptions) -> Result<ScanSummary> {
    if max_h2 < 4 {
        return Err(invalid("max H^2 must be at least 4"));
    }
    let max_h2 = max_h2 - max_h2 % 2;
    let jobs = opts.jobs.unwrap_or(1).max(1);
    if jobs == 1 {
        return Ok(scan_range(4, max_h2, opts.include_squares));
    }
    const CHUNK: u64 = 1 << 14;
    let chunks: Vec<(u64, u64)> = (0..)
        .map(|i| 4 + i * CHUNK)
        .take_while(|&lo| lo <= max_h2)
        .map(|lo| (lo, (lo + CHUNK - 2).min(max_h2)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))?;
    let summary = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(lo, hi)| scan_range(lo, hi, opts.include_squares))
            .reduce(
                || ScanSummary {
                    better: 0,
                    total: 0,
                },
                |a, b| ScanSummary {
                    better: a.better + b.better,
                    total: a.total + b.total,
                },
            )
    });
    Ok(summary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObservationVerdict {
    OnInteriorWall,
    OnBoundary,
    NotOnWall,
    EpsilonUnknown,
}

impl fmt::Display for ObservationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::OnInteriorWall => "OnInteriorWall",
            Self::OnBoundary => "OnBoundary",
            Self::NotOnWall => "NotOnWall",
            Self::EpsilonUnknown => "EpsilonUnknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationReport {
    pub h2: u64,
    pub verdict: ObservationVerdict,
    pub epsilon: SeshadriRecord,
    /// `ε/2`, the slope of `H^[3] - (ε/2)·B`.
    pub slope: Option<BigRational>,
    pub mu: BigRational,
    pub walls: Vec<BigRational>,
}

/// Locates `H^[3] - (ε/2)·B` against the walls and boundary of
/// `Mov(X^[3])` on a K3 of degree `h2`.
pub fn check_observation(h2: u64) -> Result<ObservationReport> {
    let spec = SurfaceSpec::k3(h2)?;
    let epsilon = known_epsilon(&spec, None)?;
    let set = enumerate_walls(3, h2 / 2, None)?;
    let walls = set.slopes();
    let mu = set.cone.mu.clone();
    let slope = epsilon.value.as_ref().map(|e| e / int(2));
    let verdict = match &slope {
        None => ObservationVerdict::EpsilonUnknown,
        Some(t) if *t == mu => ObservationVerdict::OnBoundary,
        Some(t) if walls.contains(t) => ObservationVerdict::OnInteriorWall,
        Some(_) => ObservationVerdict::NotOnWall,
    };
    Ok(ObservationReport {
        h2,
        verdict,
        epsilon,
        slope,
        mu,
        walls,
    })
}

/// `(H^[3] - t·B)·f_C(P¹) = C·H - t·(2 + p_a)` for the rational curve
/// `f_C` swept out by a trigonal curve `C` of arithmetic genus `p_a`.
pub fn curve_wall_pairing(ch: u64, pa: u64, t: &BigRational) -> BigRational {
    int(ch) - t * int(2 + pa)
}

/// `(q/p)·H²` for the fundamental solution `(p, q)` of `p² - H²q² = 1`.
pub fn szemberg_conjecture_bound(h2: u64) -> Result<BigRational> {
    let sol = pell_fundamental(h2)?;
    Ok(BigRational::new(
        sol.y() * BigInt::from(h2),
        sol.x().clone(),
    ))
}

/// `value < √h2`, by exact squaring.
pub fn below_sqrt(value: &BigRational, h2: u64) -> bool {
    if !value.is_positive() {
        return value.is_negative() || h2 > 0;
    }
    value.numer().pow(2) < BigInt::from(h2) * value.denom().pow(2)
}
