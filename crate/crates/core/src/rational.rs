use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar used throughout the analysis core.
pub type Rat = BigRational;

/// Builds `numer / denom` from machine integers. Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rat {
    assert!(denom != 0, "denominator must be nonzero");
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds the integer `value` as a rational.
pub fn rat_int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

/// Parses an exact rational from integer ("2"), fraction ("3/7") or decimal
/// ("30.1") notation. Decimals become exact decimal fractions: 30.1 = 301/10.
pub fn parse_rational(text: &str) -> Result<Rat, Error> {
    let bad = || Error::InvalidRational {
        text: text.to_owned(),
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((numer, denom)) = s.split_once('/') {
        let numer: BigInt = numer.trim().parse().map_err(|_| bad())?;
        let denom: BigInt = denom.trim().parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(numer, denom));
    }
    if let Some((integral, fraction)) = s.split_once('.') {
        let (sign, integral) = match integral.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, integral.strip_prefix('+').unwrap_or(integral)),
        };
        if fraction.is_empty() && integral.is_empty() {
            return Err(bad());
        }
        if !integral.chars().all(|c| c.is_ascii_digit())
            || !fraction.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{integral}{fraction}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let denom = BigInt::from(10u32).pow(fraction.len() as u32);
        return Ok(Rat::new(numer * sign, denom));
    }
    let numer: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(numer))
}

/// Formats a rational as `"p"` when integral and `"p/q"` otherwise, with the
/// denominator always positive. Round-trips through [`parse_rational`].
pub fn format_rational(value: &Rat) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `true` when `value > 0`.
pub fn is_positive(value: &Rat) -> bool {
    value.is_positive()
}

/// `1/2^t` as an exact rational.
pub fn pow2_recip(t: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2u32).pow(t))
}
