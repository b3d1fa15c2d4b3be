//! Exact rational scalars.
//!
//! Every computation in the crate runs over [`Rational`], an arbitrary
//! precision fraction that is always stored reduced with a positive
//! denominator. Text form is `p/q`, or `p` when the denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

pub use num_rational::BigRational as Rational;

/// Builds `num/den` from machine integers. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// A parsed rational together with whether its text was already canonical.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedRational {
    pub value: Rational,
    pub canonical: bool,
}

fn parse_integer(text: &str, whole: &str) -> Result<BigInt, RationalParseError> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(whole.to_string()));
    }
    BigInt::from_str(text).map_err(|_| RationalParseError::Malformed(whole.to_string()))
}

/// Parses `p/q` or `p`, normalizing non-reduced input and reporting whether
/// the text was already in canonical form.
pub fn parse_rational(text: &str) -> Result<ParsedRational, RationalParseError> {
    let text = text.trim();
    let value = match text.split_once('/') {
        Some((n, d)) => {
            let n = parse_integer(n, text)?;
            let d = parse_integer(d, text)?;
            if d.is_zero() {
                return Err(RationalParseError::ZeroDenominator(text.to_string()));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(parse_integer(text, text)?),
    };
    let canonical = format_rational(&value) == text;
    Ok(ParsedRational { value, canonical })
}
