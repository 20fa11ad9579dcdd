//! Exact rational arithmetic for every delivery-time quantity.
//!
//! Cache ratios, channel-use counts, degree-of-freedom ledgers and NDT values
//! are all `Rational`s backed by arbitrary-precision integers, so bound
//! comparisons and optimality gaps are exact. Floats appear only as display
//! shadows and inside the link simulator.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::str::FromStr;
use thiserror::Error;

/// Exact ratio of arbitrary-precision integers. Always stored reduced with a
/// positive denominator; dividing by zero panics.
pub type Rational = BigRational;

/// Builds `numer/denom` from machine integers. Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds the integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds an unsigned big integer as a rational.
pub fn rat_big(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Nearest `f64` shadow of an exact value. The exact form stays authoritative.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical text form: `num` when the value is an integer, `num/den` otherwise.
pub fn fmt_exact(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, a plain integer, or a finite decimal, all converted exactly.
///
/// Decimals are read as exact decimal fractions (`0.25` is 1/4, never a float
/// round trip). Scientific notation is rejected.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim())
            .map_err(|_| ParseRationalError::Invalid(input.to_string()))?;
        let den = BigInt::from_str(den.trim())
            .map_err(|_| ParseRationalError::Invalid(input.to_string()))?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(input.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(ParseRationalError::Invalid(input.to_string()));
        }
        let int_mag = if int_digits.is_empty() {
            BigUint::zero()
        } else {
            BigUint::from_str(int_digits)
                .map_err(|_| ParseRationalError::Invalid(input.to_string()))?
        };
        let frac_mag = if frac_part.is_empty() {
            BigUint::zero()
        } else {
            BigUint::from_str(frac_part)
                .map_err(|_| ParseRationalError::Invalid(input.to_string()))?
        };
        let scale = BigUint::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int_mag * &scale + frac_mag;
        let mut value = Rational::new(BigInt::from(magnitude), BigInt::from(scale));
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| ParseRationalError::Invalid(input.to_string()))
}
