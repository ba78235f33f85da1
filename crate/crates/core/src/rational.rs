//! Exact rational helpers.
//!
//! Every mass, weight, transport cost and curvature value in this crate is a
//! [`Rational`]. Text forms are the canonical lowest-terms `p/q` string, or a
//! bare integer when the denominator is one. Decimal notation is rejected on
//! input so that no value ever passes through floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::RationalParseError;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Canonical text form: `p/q` in lowest terms, or `p` for integers.
pub fn format(value: &Rational) -> String {
    // BigRational keeps itself reduced with a positive denominator, and its
    // Display impl omits `/1`.
    value.to_string()
}

/// Parses `p/q` or `p`. Decimal points, exponents and whitespace are errors.
pub fn parse(text: &str) -> Result<Rational, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    if text.is_empty()
        || !text
            .chars()
            .all(|c| c.is_ascii_digit() || c == '/' || c == '-' || c == '+')
    {
        return Err(err());
    }
    let mut parts = text.splitn(2, '/');
    let numer = BigInt::from_str(parts.next().unwrap_or_default()).map_err(|_| err())?;
    let denom = match parts.next() {
        Some(d) => BigInt::from_str(d).map_err(|_| err())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

/// Renders `value` with exactly `digits` fractional digits, rounding half
/// away from zero. Only used for human-facing output next to the exact form.
pub fn decimal(value: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if r * 2 >= *scaled.denom() { q + 1 } else { q };
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !(whole.is_zero() && frac.is_zero()) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>digits$}")
    }
}

pub(crate) mod serde_text {
    pub mod option {
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        use crate::rational::Rational;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_str(&crate::rational::format(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let text = Option::<String>::deserialize(d)?;
            text.map(|t| crate::rational::parse(&t).map_err(D::Error::custom))
                .transpose()
        }
    }
}
