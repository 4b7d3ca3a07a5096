//! The algebraic Mukai lattice `Z ⊕ Z·H ⊕ Z` of a surface with `Pic = Z·H`,
//! and the identification of `Pic(X^[n])` with `v^⊥` for `v = (1, 0, 1 - n)`.
//!
//! The pairing is `(r, mH, s)·(r', m'H, s') = 2d·m·m' - r·s' - r'·s` where
//! `H·H = 2d`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Result};

/// A class `(r, m·H, s)` of the algebraic Mukai lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MukaiVector {
    pub r: BigInt,
    pub m: BigInt,
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, m: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        Self {
            r: r.into(),
            m: m.into(),
            s: s.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.m.is_zero() && self.s.is_zero()
    }

    pub fn pairing(&self, other: &Self, d: u64) -> BigInt {
        mukai_pairing(self, other, d)
    }

    /// Self-pairing `2d·m² - 2rs`.
    pub fn square(&self, d: u64) -> BigInt {
        mukai_pairing(self, self, d)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self {
            r: &self.r * &k,
            m: &self.m * &k,
            s: &self.s * &k,
        }
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.m, self.s)
    }
}

impl Neg for &MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector {
            r: -&self.r,
            m: -&self.m,
            s: -&self.s,
        }
    }
}

impl Neg for MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        -&self
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + &rhs.r,
            m: &self.m + &rhs.m,
            s: &self.s + &rhs.s,
        }
    }
}

impl Sub for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r - &rhs.r,
            m: &self.m - &rhs.m,
            s: &self.s - &rhs.s,
        }
    }
}

/// Mukai pairing for ambient half-degree `d` (so `H·H = 2d`).
pub fn mukai_pairing(a: &MukaiVector, b: &MukaiVector, d: u64) -> BigInt {
    BigInt::from(2 * d) * &a.m * &b.m - &a.r * &b.s - &b.r * &a.s
}

/// A surface degree `H·H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(u64);

impl Degree {
    pub fn new(h2: u64) -> Result<Self> {
        if h2 == 0 {
            return Err(invalid("H^2 must be positive"));
        }
        Ok(Self(h2))
    }

    /// A K3 degree; must be even.
    pub fn k3(h2: u64) -> Result<Self> {
        if h2 == 0 || h2 % 2 == 1 {
            return Err(invalid(format!(
                "K3 degree H^2 = {h2} must be even and positive"
            )));
        }
        Ok(Self(h2))
    }

    pub fn h2(self) -> u64 {
        self.0
    }

    /// `d = H²/2`, rounded down for odd degrees.
    pub fn half(self) -> u64 {
        self.0 / 2
    }
}

/// The Hilbert-scheme classes inside the Mukai lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertClasses {
    /// Mukai vector `(1, 0, 1 - n)` of the ideal sheaf of `n` points.
    pub v: MukaiVector,
    /// `H^[n] = (0, H, 0)`.
    pub h: MukaiVector,
    /// `B = (1, 0, n - 1)`, half the class of the exceptional divisor.
    pub b: MukaiVector,
}

pub fn hilbert_classes(n: u64) -> Result<HilbertClasses> {
    if n < 2 {
        return Err(invalid(format!("n = {n}: Hilbert schemes need n >= 2")));
    }
    let n1 = BigInt::from(n - 1);
    Ok(HilbertClasses {
        v: MukaiVector::new(1, 0, -&n1),
        h: MukaiVector::new(0, 1, 0),
        b: MukaiVector::new(1, 0, n1),
    })
}

/// A ray `alpha·H^[n] + beta·B` in `Pic(X^[n]) ⊗ Q`.
///
/// Stored as a coprime pair with `alpha >= 0`; when `alpha == 0` the sign is
/// fixed so that `beta == -1`, i.e. the ray points along `-B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorRay {
    alpha: BigInt,
    beta: BigInt,
}

impl DivisorRay {
    /// Normalizes `(alpha, beta)`; `None` for the zero vector.
    pub fn new(alpha: impl Into<BigInt>, beta: impl Into<BigInt>) -> Option<Self> {
        let mut alpha = alpha.into();
        let mut beta = beta.into();
        if alpha.is_zero() && beta.is_zero() {
            return None;
        }
        let g = alpha.gcd(&beta);
        alpha /= &g;
        beta /= &g;
        if alpha.is_negative() || (alpha.is_zero() && beta.is_positive()) {
            alpha = -alpha;
            beta = -beta;
        }
        Some(Self { alpha, beta })
    }

    /// The ray `H^[n] - t·B`.
    pub fn from_slope(t: &BigRational) -> Self {
        Self::new(t.denom().clone(), -t.numer().clone()).expect("denominator is nonzero")
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn beta(&self) -> &BigInt {
        &self.beta
    }

    /// `t` with the ray equal to `H^[n] - t·B`; `None` for the `-B` ray.
    pub fn slope(&self) -> Option<BigRational> {
        if self.alpha.is_zero() {
            None
        } else {
            Some(BigRational::new(-self.beta.clone(), self.alpha.clone()))
        }
    }

    /// The class of the ray inside the Mukai lattice.
    pub fn to_mukai(&self, n: u64) -> MukaiVector {
        MukaiVector {
            r: self.beta.clone(),
            m: self.alpha.clone(),
            s: &self.beta * BigInt::from(n - 1),
        }
    }
}

impl fmt::Display for DivisorRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slope() {
            Some(t) => write!(f, "H - {t} B"),
            None => write!(f, "-B"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrthogonalRay {
    Ray(DivisorRay),
    /// `a` is orthogonal to all of `v^⊥`, i.e. `a` is a multiple of `v`.
    Degenerate,
}

impl OrthogonalRay {
    pub fn ray(&self) -> Option<&DivisorRay> {
        match self {
            Self::Ray(r) => Some(r),
            Self::Degenerate => None,
        }
    }
}

/// The ray of `v^⊥ ∩ a^⊥` inside `Pic(X^[n])`.
///
/// For `D = alpha·H + beta·B = (beta, alpha, beta(n-1))` the condition
/// `D·a = 0` reads `2d·m·alpha = (s + r(n-1))·beta`, so
/// `(alpha, beta) ∝ (s + r(n-1), 2d·m)`.
pub fn wall_ray_from_class(a: &MukaiVector, n: u64, d: u64) -> Result<OrthogonalRay> {
    if n < 2 {
        return Err(invalid(format!("n = {n}: Hilbert schemes need n >= 2")));
    }
    if d == 0 {
        return Err(invalid("half-degree d must be positive"));
    }
    let alpha = &a.s + &a.r * BigInt::from(n - 1);
    let beta = BigInt::from(2 * d) * &a.m;
    Ok(match DivisorRay::new(alpha, beta) {
        Some(ray) => OrthogonalRay::Ray(ray),
        None => OrthogonalRay::Degenerate,
    })
}
