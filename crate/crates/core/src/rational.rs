//! Exact rational scalars.
//!
//! All real parameters (block exponents, pairing values, points of `a*_M`)
//! are kept as reduced fractions of 64-bit integers. Text form is `p/q`, or
//! `p` when the denominator is one.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Reduced fraction with positive denominator.
pub type Rational = Ratio<i64>;

/// Errors raised while reading a rational from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("integer `{0}` does not fit in 64 bits")]
    Overflow(String),
}

/// Parses `-?INT(/INT)?`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numer = parse_int(num, t, true)?;
    let denom = match den {
        Some(d) => parse_int(d, t, false)?,
        None => 1,
    };
    if denom == 0 {
        return Err(RationalParseError::ZeroDenominator(t.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_int(digits: &str, whole: &str, allow_sign: bool) -> Result<i64, RationalParseError> {
    let body = if allow_sign { digits.strip_prefix('-').unwrap_or(digits) } else { digits };
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Invalid(whole.to_string()));
    }
    digits.parse::<i64>().map_err(|_| RationalParseError::Overflow(digits.to_string()))
}

/// Renders `p/q`, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Display wrapper for a slice of rationals: `(a, b, c)`.
pub struct RationalTuple<'a>(pub &'a [Rational]);

impl fmt::Display for RationalTuple<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

/// Serde adapter storing rationals as strings.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for sequences of rationals stored as strings.
pub mod serde_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts.iter().map(|t| parse_rational(t).map_err(D::Error::custom)).collect()
    }
}
