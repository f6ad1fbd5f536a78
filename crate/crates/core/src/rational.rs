//! Helpers around `BigRational`: parsing, canonical rendering, exact square roots.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q` with the sign carried on the numerator. Integers keep the `/1`.
pub fn to_pq(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<Q, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    if d.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Q::new(n, d))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative square root of `x` if `x` is the square of a rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    let n = exact_isqrt(x.numer())?;
    let d = exact_isqrt(x.denom())?;
    Some(Q::new(n, d))
}

/// Lossy conversion for numeric reporting; handles numerators and denominators
/// beyond the f64 range by scaling.
pub fn to_f64(x: &Q) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = x.numer().bits().max(x.denom().bits()) as i64 - 900;
    let shift = shift.max(0) as usize;
    let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
    if d == 0.0 {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else {
        n / d
    }
}

/// Exact conversion of a finite f64 to a rational.
pub fn from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(2m-1)!! = 1·3·5···(2m-1)`, the number of perfect matchings on `2m` points.
pub fn double_factorial_odd(two_m_minus_one: u64) -> BigInt {
    (1..=two_m_minus_one)
        .step_by(2)
        .fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
