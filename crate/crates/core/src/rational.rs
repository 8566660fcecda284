//! Exact rational numbers and their text forms.
//!
//! All game entries, simplex points, and certificates are `BigRational`, which
//! keeps values in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

use crate::error::RationalParseError;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"`.
pub fn parse(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Malformed(s.to_string()))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Malformed(s.to_string()))?;
        if den.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits_ok = !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok {
            return Err(RationalParseError::Malformed(s.to_string()));
        }
        let whole_val: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w
                .parse()
                .map_err(|_| RationalParseError::Malformed(s.to_string()))?,
        };
        let frac_val: BigInt = frac.parse().unwrap_or_else(|_| BigInt::zero());
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let magnitude = Rational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| RationalParseError::Malformed(s.to_string()))
}

/// Canonical text: `"1/2"`, `"-3"`, `"0"`.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point decimal with `digits` fractional digits, rounded half away
/// from zero. `digits == 0` yields an integer string.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if rem * 2 >= *scaled.denom() { q + 1 } else { q };
    let negative = r.is_negative() && !rounded.is_zero();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_string();
        format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapters writing rationals as canonical strings.
pub mod serde_str {
    use super::{format, parse, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse(t).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod opt_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::vec::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Vec<Rational>>, D::Error> {
            let texts = Option::<Vec<String>>::deserialize(d)?;
            texts
                .map(|ts| {
                    ts.iter()
                        .map(|t| parse(t).map_err(D::Error::custom))
                        .collect()
                })
                .transpose()
        }
    }

    pub mod matrix {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(format).collect()).collect();
            serde::Serialize::serialize(&rows, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            let rows = Vec::<Vec<String>>::deserialize(d)?;
            rows.iter()
                .map(|r| r.iter().map(|t| parse(t).map_err(D::Error::custom)).collect())
                .collect()
        }
    }
}
