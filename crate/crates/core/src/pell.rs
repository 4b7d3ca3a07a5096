//! Exact solvers for the Pell-type equations behind the movable-cone cases.
//!
//! Everything is arbitrary precision; fundamental units for moderate `D` are
//! already far beyond 64 bits (`D = 181` needs 19 digits).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{exact_sqrt, isqrt};
use crate::error::{invalid, Error, Result};

/// Iteration cap for the residue-period scan in [`first_with_divisibility`].
pub const DEFAULT_PERIOD_CAP: u64 = 1_000_000;

/// A positive solution `(x, y)` of `a·x² - b·y² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellSolution {
    x: BigInt,
    y: BigInt,
}

impl PellSolution {
    /// Accepts `(x, y)` only if both are positive and `a·x² - b·y² = 1`.
    pub fn new(x: BigInt, y: BigInt, a: &BigInt, b: &BigInt) -> Option<Self> {
        let sol = Self { x, y };
        (sol.x.is_positive() && sol.y.is_positive() && sol.satisfies(a, b)).then_some(sol)
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn satisfies(&self, a: &BigInt, b: &BigInt) -> bool {
        a * &self.x * &self.x - b * &self.y * &self.y == BigInt::one()
    }

    fn pell(x: BigInt, y: BigInt, d: &BigInt) -> Self {
        Self::new(x, y, &BigInt::one(), d).expect("Pell recurrence left the solution set")
    }
}

impl std::fmt::Display for PellSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn check_pell_input(d: &BigInt) -> Result<()> {
    if *d < BigInt::from(2) {
        return Err(invalid(format!("D = {d}: Pell equations need D >= 2")));
    }
    if exact_sqrt(d).is_some() {
        return Err(Error::PerfectSquare(format!("D = {d}")));
    }
    Ok(())
}

/// Minimal positive solution of `x² - D·y² = 1`.
///
/// Walks the periodic continued fraction of `√D`. With period length `l`
/// the convergent `p_{l-1}/q_{l-1}` has norm `(-1)^l`, so the answer sits at
/// the end of the first period (even `l`) or the second (odd `l`).
pub fn pell_fundamental(d: impl Into<BigInt>) -> Result<PellSolution> {
    let d = d.into();
    check_pell_input(&d)?;
    let a0 = isqrt(&d);
    let two_a0: BigInt = &a0 * 2u32;

    let mut m = BigInt::zero();
    let mut den = BigInt::one();
    let mut a = a0.clone();
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        m = &den * &a - &m;
        den = (&d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        if a == two_a0 && &p * &p - &d * &q * &q == BigInt::one() {
            return Ok(PellSolution::pell(p, q, &d));
        }
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// `(x₁ + y₁√D)(x + y√D)`.
fn compose(fund: &PellSolution, cur: &PellSolution, d: &BigInt) -> PellSolution {
    let x = &fund.x * &cur.x + d * &fund.y * &cur.y;
    let y = &fund.x * &cur.y + &fund.y * &cur.x;
    PellSolution::pell(x, y, d)
}

/// The first `count` positive solutions of `x² - D·y² = 1`, by increasing `x`.
pub fn pell_solutions(d: impl Into<BigInt>, count: usize) -> Result<Vec<PellSolution>> {
    let d = d.into();
    if count == 0 {
        return Err(invalid("count must be at least 1"));
    }
    let fund = pell_fundamental(d.clone())?;
    let mut out = Vec::with_capacity(count);
    out.push(fund.clone());
    while out.len() < count {
        let next = compose(&fund, out.last().unwrap(), &d);
        out.push(next);
    }
    Ok(out)
}

/// Solution of `A·x² - B·y² = 1` with minimal `x > 0` (and `y > 0`), if any.
///
/// Write `η = x√A + y√B`. Units of `Z[√AB]` act on the solution set, and
/// `η²` is a norm-one unit. Any solution therefore has the form
/// `η₀·ε^k` where `ε = x₁ + y₁√AB` is the fundamental unit and `η₀` lies
/// in the class-representative window `1 < η₀ ≤ √ε`. For `A > 1` the window
/// holds at most the single point with `η₀² = ε`, which pins
/// `x² = (x₁ + 1)/2A` and `y² = (x₁ - 1)/2B`; if those are not integer
/// squares there is no solution at all. For `A = 1` the answer is `ε`
/// itself. When `AB` is a square the equation factors and has finitely many
/// solutions, found from the divisors of `A`.
pub fn solve_two_term(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Option<PellSolution>> {
    let a = a.into();
    let b = b.into();
    if !a.is_positive() || !b.is_positive() {
        return Err(invalid(format!("A = {a}, B = {b}: both must be positive")));
    }
    let ab = &a * &b;
    if let Some(c) = exact_sqrt(&ab) {
        return Ok(solve_two_term_square(&a, &b, &c));
    }
    let fund = pell_fundamental(ab)?;
    if a.is_one() {
        return Ok(PellSolution::new(fund.x, fund.y, &a, &b));
    }
    let (xq, xr) = (&fund.x + 1u32).div_rem(&(&a * 2u32));
    let (yq, yr) = (&fund.x - 1u32).div_rem(&(&b * 2u32));
    if !xr.is_zero() || !yr.is_zero() {
        return Ok(None);
    }
    match (exact_sqrt(&xq), exact_sqrt(&yq)) {
        (Some(x), Some(y)) => Ok(PellSolution::new(x, y, &a, &b)),
        _ => Ok(None),
    }
}

/// `(Ax - cy)(Ax + cy) = A` with `c² = AB`.
fn solve_two_term_square(a: &BigInt, b: &BigInt, c: &BigInt) -> Option<PellSolution> {
    let mut best: Option<PellSolution> = None;
    let mut f = BigInt::one();
    while &f * &f < *a {
        if (a % &f).is_zero() {
            let g = a / &f;
            let sum = &f + &g;
            let diff = &g - &f;
            if sum.is_even() {
                let big_x = &sum / 2u32;
                let cy = &diff / 2u32;
                if (&big_x % a).is_zero() && (&cy % c).is_zero() {
                    if let Some(sol) = PellSolution::new(&big_x / a, &cy / c, a, b) {
                        if best.as_ref().is_none_or(|cur| sol.x < cur.x) {
                            best = Some(sol);
                        }
                    }
                }
            }
        }
        f += 1u32;
    }
    best
}

/// First solution of `x² - D·y² = 1` (by increasing `x`) with `q | x + 1`.
pub fn first_with_divisibility(d: impl Into<BigInt>, q: u64) -> Result<Option<PellSolution>> {
    first_with_divisibility_capped(d, q, DEFAULT_PERIOD_CAP)
}

/// As [`first_with_divisibility`] with an explicit iteration cap.
pub fn first_with_divisibility_capped(
    d: impl Into<BigInt>,
    q: u64,
    cap: u64,
) -> Result<Option<PellSolution>> {
    first_matching(d.into(), q, cap, |x, q| (x + 1) % q == 0)
}

/// First solution of `x² - D·y² = 1` (by increasing `x`) with
/// `x ≡ ±1 (mod q)`.
///
/// Unlike [`first_with_divisibility`] this always succeeds: the residue
/// orbit returns to `x ≡ 1` at the end of its period.
pub fn first_congruent_to_unit(d: impl Into<BigInt>, q: u64) -> Result<Option<PellSolution>> {
    first_matching(d.into(), q, DEFAULT_PERIOD_CAP, |x, q| {
        (x + 1) % q == 0 || x % q == 1 % q
    })
}

/// The solutions are the powers `ε^k`, and `k ↦ (x_k, y_k) mod q` is the
/// orbit of an invertible linear map (determinant `x₁² - D·y₁² = 1`), so it
/// returns to `(1, 0)` after one full period. A period with no hit means no
/// solution exists.
fn first_matching(
    d: BigInt,
    q: u64,
    cap: u64,
    accept: impl Fn(u128, u128) -> bool,
) -> Result<Option<PellSolution>> {
    if q == 0 {
        return Err(invalid("divisor q must be positive"));
    }
    let fund = pell_fundamental(d.clone())?;
    let modulus = BigInt::from(q);
    let reduce = |v: &BigInt| v.mod_floor(&modulus).to_u128().expect("residue below q");
    let (x1, y1, dm) = (reduce(&fund.x), reduce(&fund.y), reduce(&d));
    let q = q as u128;
    let mul = |a: u128, b: u128| (a * b) % q;
    let start = (1 % q, 0u128);

    let (mut xr, mut yr) = start;
    let mut hit = None;
    for k in 1..=cap {
        let nx = (mul(x1, xr) + mul(mul(dm, y1), yr)) % q;
        let ny = (mul(x1, yr) + mul(y1, xr)) % q;
        xr = nx;
        yr = ny;
        if accept(xr, q) {
            hit = Some(k);
            break;
        }
        if (xr, yr) == start {
            return Ok(None);
        }
    }
    let Some(k) = hit else {
        return Err(Error::CapExceeded { cap });
    };
    let mut sol = fund.clone();
    for _ in 1..k {
        sol = compose(&fund, &sol, &d);
    }
    Ok(Some(sol))
}
