//! Small exact-arithmetic helpers shared by the other modules.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Floor square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Returns the root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_square_u64(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Smallest integer `c` with `c * c >= n`.
pub fn ceil_sqrt_u64(n: u64) -> u64 {
    let r = n.sqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Renders `q` with `places` fractional digits, rounding half to even.
pub fn decimal(q: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let num = q.numer().abs() * &scale;
    let den = q.denom().abs();
    let (mut whole, rem) = num.div_rem(&den);
    let twice: BigInt = rem * 2u32;
    if twice > den || (twice == den && whole.is_odd()) {
        whole += 1u32;
    }
    let negative = q.is_negative() && !whole.is_zero();
    format_scaled(&whole, places, negative)
}

/// Renders `sqrt(n)` with `places` fractional digits, rounding half to even.
///
/// A tie would need `4·n·10^(2p)` to equal an odd square, so the round-half
/// branch never fires for irrational roots.
pub fn sqrt_decimal(n: &BigInt, places: u32) -> String {
    let scaled = n * BigInt::from(10u32).pow(2 * places);
    let mut root = isqrt(&scaled);
    if &root * &root != scaled {
        let upper: BigInt = &root * 2u32 + 1u32;
        if upper.pow(2) < scaled * 4u32 {
            root += 1u32;
        }
    }
    format_scaled(&root, places, false)
}

fn format_scaled(magnitude: &BigInt, places: u32, negative: bool) -> String {
    let digits = magnitude.to_str_radix(10);
    let places = places as usize;
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Compares `q` against `sqrt(num / den)` without leaving the integers.
pub fn cmp_with_sqrt(q: &BigRational, num: &BigInt, den: &BigInt) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    debug_assert!(num.sign() != Sign::Minus && den.is_positive());
    if q.is_negative() {
        return Ordering::Less;
    }
    // q^2 vs num/den  <=>  p^2 * den vs num * s^2
    let lhs = q.numer().pow(2) * den;
    let rhs = num * q.denom().pow(2);
    lhs.cmp(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounds_half_even() {
        assert_eq!(decimal(&ratio(32, 15), 3), "2.133");
        assert_eq!(decimal(&ratio(1, 8), 2), "0.12");
        assert_eq!(decimal(&ratio(3, 8), 2), "0.38");
        assert_eq!(decimal(&ratio(-3, 8), 2), "-0.38");
        assert_eq!(decimal(&ratio(1, 2000), 3), "0.000");
        assert_eq!(decimal(&int(7), 0), "7");
        assert_eq!(decimal(&ratio(25, 3), 3), "8.333");
    }

    #[test]
    fn sqrt_decimal_matches_table_column() {
        assert_eq!(sqrt_decimal(&BigInt::from(8), 3), "2.828");
        assert_eq!(sqrt_decimal(&BigInt::from(22), 3), "4.690");
        assert_eq!(sqrt_decimal(&BigInt::from(16), 3), "4.000");
        assert_eq!(sqrt_decimal(&BigInt::from(76), 3), "8.718");
    }

    #[test]
    fn ceil_sqrt_edges() {
        assert_eq!(ceil_sqrt_u64(0), 0);
        assert_eq!(ceil_sqrt_u64(10), 4);
        assert_eq!(ceil_sqrt_u64(16), 4);
        assert_eq!(ceil_sqrt_u64(17), 5);
    }

    #[test]
    fn sqrt_comparison_is_sign_aware() {
        use std::cmp::Ordering;
        let four = BigInt::from(4);
        let one = BigInt::from(1);
        assert_eq!(cmp_with_sqrt(&int(2), &four, &one), Ordering::Equal);
        assert_eq!(cmp_with_sqrt(&int(-3), &four, &one), Ordering::Less);
        assert_eq!(cmp_with_sqrt(&ratio(1, 2), &one, &four), Ordering::Equal);
    }
}
