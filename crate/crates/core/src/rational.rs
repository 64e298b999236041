//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, positive
//! denominator, zero stored as `0/1`. Its `Display` already produces the
//! `p/q` (or `p`) text form used in every JSON document.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::schema("coeff", format!("`{text}` is not a rational of the form p or p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::schema("coeff", "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// `Some(n)` when `value` is an integer fitting in `i64`.
pub fn as_integer(value: &Rational) -> Option<i64> {
    if value.is_integer() {
        value.to_integer().to_i64()
    } else {
        None
    }
}

/// Generalized binomial coefficient `C(n, i)` for any integer `n` and `i ≥ 0`.
pub fn binomial(n: i64, i: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..i as i64 {
        acc *= q(n - j);
        acc /= q(j + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}
