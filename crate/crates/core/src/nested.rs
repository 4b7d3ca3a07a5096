//! Infimum Seshadri constants read off nef cones of nested Hilbert schemes
//! `X^[r, r+1]`, and the Nagata-type comparisons built on them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{cmp_with_sqrt, is_square, ratio};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NestedSurface {
    ProjectivePlane,
    /// `F_e` with ample `H = a·C + b·F`.
    Hirzebruch {
        e: u64,
        a: u64,
        b: u64,
    },
    VeryGeneralK3 {
        h2: u64,
    },
}

impl NestedSurface {
    pub fn hirzebruch(e: u64, a: u64, b: u64) -> Result<Self> {
        if e == 0 {
            return Err(invalid("Hirzebruch index e must be positive"));
        }
        if a == 0 || b <= a * e {
            return Err(invalid(format!("H = {a}C + {b}F is not ample on F_{e}")));
        }
        Ok(Self::Hirzebruch { e, a, b })
    }

    pub fn k3(h2: u64) -> Result<Self> {
        if h2 < 2 || h2 % 2 == 1 {
            return Err(invalid(format!(
                "K3 degree {h2} must be even and at least 2"
            )));
        }
        Ok(Self::VeryGeneralK3 { h2 })
    }

    /// Smallest `r` for which the closed form is available.
    pub fn min_r(&self) -> u64 {
        match self {
            Self::ProjectivePlane | Self::Hirzebruch { .. } => 2,
            Self::VeryGeneralK3 { h2 } => h2 / 2 + 1,
        }
    }
}

/// `ε_inf(H, r)`: the infimum of `ε(H, Z)` over length-`r` subschemes `Z`.
pub fn eps_inf(surface: &NestedSurface, r: u64) -> Result<BigRational> {
    let min = surface.min_r();
    if r < min {
        return Err(Error::OutOfRange { r, min });
    }
    Ok(match *surface {
        NestedSurface::ProjectivePlane => ratio(1, r),
        NestedSurface::Hirzebruch { e, a, b } => ratio(a.min(b - a * e), r),
        NestedSurface::VeryGeneralK3 { h2 } => ratio(h2, r + 1 + h2 / 2),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NagataComparison {
    Below,
    Equal,
    Above,
}

impl fmt::Display for NagataComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Below => "below",
            Self::Equal => "equal",
            Self::Above => "above",
        })
    }
}

/// Compares `candidate` with the Nagata value `√(H²/r)`.
pub fn nagata_value_compare(h2: u64, r: u64, candidate: &BigRational) -> Result<NagataComparison> {
    if h2 == 0 || r == 0 {
        return Err(invalid("H^2 and r must be positive"));
    }
    Ok(
        match cmp_with_sqrt(candidate, &BigInt::from(h2), &BigInt::from(r)) {
            Ordering::Less => NagataComparison::Below,
            Ordering::Equal => NagataComparison::Equal,
            Ordering::Greater => NagataComparison::Above,
        },
    )
}

/// `C·H / Σmᵢ < √(H²/r)` with `r = mults.len()`, i.e.
/// `(C·H)²·r < H²·(Σmᵢ)²`.
pub fn is_nagata_submaximal(ch: u64, mults: &[u64], h2: u64) -> Result<bool> {
    if mults.is_empty() || mults.contains(&0) {
        return Err(invalid(
            "multiplicities must be a nonempty list of positive integers",
        ));
    }
    let total: BigInt = mults.iter().map(|&m| BigInt::from(m)).sum();
    let r = BigInt::from(mults.len());
    let lhs = BigInt::from(ch).pow(2) * r;
    let rhs = BigInt::from(h2) * total.pow(2);
    Ok(lhs < rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MdsVerdict {
    /// `√(H²/r)` is irrational, so `X^[r,r+1]` is not a Mori dream space
    /// provided `ε(H, r) = √(H²/r)`.
    Obstructed,
    NotObstructed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MdsReport {
    pub verdict: MdsVerdict,
    /// The verdict relies on the Nagata-type equality `ε(H, r) = √(H²/r)`.
    pub assumes_nagata: bool,
    /// `X = P²` and `r = s² > 9`: not a Mori dream space, unconditionally.
    pub plane_square_obstruction: bool,
}

/// Mori-dream-space obstruction for `X^[r, r+1]` on a surface with
/// `Pic = Z·H`. Pass `plane = true` for `X = P²`.
pub fn mds_obstructed(h2: u64, r: u64, plane: bool) -> Result<MdsReport> {
    if h2 == 0 || r == 0 {
        return Err(invalid("H^2 and r must be positive"));
    }
    if plane && h2 != 1 {
        return Err(invalid("the plane has H^2 = 1"));
    }
    let rational = is_square(&(BigInt::from(h2) * BigInt::from(r)));
    let verdict = if rational {
        MdsVerdict::NotObstructed
    } else {
        MdsVerdict::Obstructed
    };
    let plane_square_obstruction = plane && r > 9 && is_square(&BigInt::from(r));
    Ok(MdsReport {
        verdict,
        assumes_nagata: verdict == MdsVerdict::Obstructed,
        plane_square_obstruction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_inf_examples() {
        assert_eq!(
            eps_inf(&NestedSurface::ProjectivePlane, 5).unwrap(),
            ratio(1, 5)
        );
        let f1 = NestedSurface::hirzebruch(1, 1, 2).unwrap();
        assert_eq!(eps_inf(&f1, 2).unwrap(), ratio(1, 2));
        let k3 = NestedSurface::k3(2).unwrap();
        assert_eq!(eps_inf(&k3, 2).unwrap(), ratio(1, 2));
    }

    #[test]
    fn eps_inf_thresholds() {
        let k3 = NestedSurface::k3(10).unwrap();
        assert_eq!(eps_inf(&k3, 5), Err(Error::OutOfRange { r: 5, min: 6 }));
        assert_eq!(eps_inf(&k3, 6).unwrap(), ratio(10, 12));
        assert!(eps_inf(&NestedSurface::ProjectivePlane, 1).is_err());
        assert!(NestedSurface::hirzebruch(2, 1, 2).is_err());
        assert!(NestedSurface::hirzebruch(0, 1, 2).is_err());
        assert!(NestedSurface::k3(3).is_err());
    }

    #[test]
    fn nagata_examples() {
        let cmp = |h2, r, c: BigRational| nagata_value_compare(h2, r, &c).unwrap();
        assert_eq!(cmp(1, 4, ratio(1, 2)), NagataComparison::Equal);
        assert_eq!(cmp(2, 2, ratio(1, 2)), NagataComparison::Below);
        assert_eq!(cmp(10, 1, ratio(60, 19)), NagataComparison::Below);
        assert_eq!(cmp(1, 1, ratio(3, 2)), NagataComparison::Above);
        assert_eq!(cmp(1, 1, ratio(-3, 2)), NagataComparison::Below);
    }

    #[test]
    fn submaximal_examples() {
        assert!(is_nagata_submaximal(3, &[1; 10], 1).unwrap());
        assert!(!is_nagata_submaximal(1, &[1], 1).unwrap());
        assert!(!is_nagata_submaximal(5, &[1], 4).unwrap());
        assert!(is_nagata_submaximal(1, &[], 1).is_err());
    }

    #[test]
    fn mds_examples() {
        let r = mds_obstructed(1, 16, true).unwrap();
        assert_eq!(r.verdict, MdsVerdict::NotObstructed);
        assert!(r.plane_square_obstruction);
        let r = mds_obstructed(2, 3, false).unwrap();
        assert_eq!(r.verdict, MdsVerdict::Obstructed);
        assert!(r.assumes_nagata);
        let r = mds_obstructed(2, 2, false).unwrap();
        assert_eq!(r.verdict, MdsVerdict::NotObstructed);
        assert!(!mds_obstructed(1, 9, true).unwrap().plane_square_obstruction);
    }
}
