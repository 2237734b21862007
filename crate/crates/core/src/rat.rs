//! Exact rational scalars and the small helpers every other module leans on.

use malachite_base::num::arithmetic::traits::Gcd;
use malachite_nz::natural::Natural;
use malachite_nz::platform::Limb;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// `n / d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Largest integer not exceeding `x`.
pub fn floor(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Smallest integer not below `x`.
pub fn ceil(x: &Rat) -> BigInt {
    -((-x).numer().div_floor(x.denom()))
}

/// Representative of `x` mod 1 in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - Rat::from_integer(floor(x))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// `x` as an `i64` when it is an integer that fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Denominator of `x` as a `u64`; panics if it does not fit, which never
/// happens for the exponent grids handled here.
pub fn denom_u64(x: &Rat) -> u64 {
    x.denom()
        .to_u64()
        .expect("exponent denominator exceeds u64")
}

/// Reduced textual form: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace ignored) into a reduced
/// rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Comma separated list of rationals, e.g. `"1/12,5/12"`.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

fn to_natural(x: &BigInt) -> Natural {
    Natural::from_owned_limbs_asc(x.magnitude().to_u64_digits().into_iter().map(|d| d as Limb).collect())
}

/// Non-negative gcd of two big integers. num-bigint's binary gcd is
/// quadratic with a large constant; coefficients here run to thousands of
/// bits, so this goes through malachite's subquadratic gcd instead.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.bits() < 128 || b.bits() < 128 {
        return a.gcd(b);
    }
    let g = to_natural(a).gcd(to_natural(b));
    let digits: Vec<u64> = g.to_limbs_asc().into_iter().collect();
    BigInt::from_biguint(Sign::Plus, BigUint::new(
        digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect(),
    ))
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / gcd(a, b) * b).abs()
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

/// Elementary symmetric polynomials `e_0 = 1, e_1, ..., e_n` of `xs`.
pub fn elementary_symmetric(xs: &[Rat]) -> Vec<Rat> {
    let mut e = vec![Rat::one()];
    for x in xs {
        e.push(Rat::zero());
        for j in (1..e.len()).rev() {
            let t = &e[j - 1] * x;
            e[j] += t;
        }
    }
    e
}

/// Coefficients (ascending powers) of the monic polynomial `prod (r - x)`.
pub fn poly_from_roots(xs: &[Rat]) -> Vec<Rat> {
    let mut p = vec![Rat::one()];
    for x in xs {
        let mut next = vec![Rat::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * x;
        }
        p = next;
    }
    p
}

/// Horner evaluation of an ascending-coefficient polynomial.
pub fn poly_eval(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * x + c)
}
