//! Small helpers around `BigRational` shared by every module.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Parses integer or `p/q` literals such as `"7"` and `"-3/4"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    s.parse::<Q>()
        .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

/// Exact integer square root, if `n` is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational square root, if `x` is the square of a rational.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    // BigRational keeps lowest terms, so numerator and denominator must both
    // be perfect squares.
    let n = isqrt_exact(x.numer())?;
    let d = isqrt_exact(x.denom())?;
    Some(Q::new(n, d))
}

pub fn is_square(x: &Q) -> bool {
    sqrt_exact(x).is_some()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Height `max(|num|, |den|)`, used for deterministic tie-breaking.
pub fn height(x: &Q) -> BigInt {
    let n = x.numer().abs();
    let d = x.denom().abs();
    if n > d {
        n
    } else {
        d
    }
}

/// Scales a list of rationals by their common denominator.
pub fn clear_denominators(values: &[Q]) -> (Vec<BigInt>, BigInt) {
    let l = common_denominator(values);
    let out = values.iter().map(|v| (v * int(&l)).to_integer()).collect();
    (out, l)
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}
