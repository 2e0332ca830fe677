//! Exact rational numbers and their canonical text form.
//!
//! Every rational crossing a file boundary is written as `"p/q"` or `"p"`
//! with `q > 0` and `gcd(p, q) = 1`. Parsing additionally accepts exact
//! decimal strings such as `"-0.125"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Canonical string: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `"p"`, `"p/q"` or an exact decimal like `"1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Malformed(format!("not an exact rational: {text:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = text.split_once('/') {
        let p = parse_integer(p).ok_or_else(bad)?;
        let q = parse_integer(q).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(Error::Malformed(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            parse_integer(whole).ok_or_else(bad)?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::new(whole.abs() * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    parse_integer(text).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// `base^exponent` for a possibly negative exponent.
pub fn pow_signed(base: &Rational, exponent: i64) -> Rational {
    match exponent.cmp(&0) {
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Greater => Pow::pow(base, exponent as u64),
        std::cmp::Ordering::Less => Pow::pow(base.recip(), exponent.unsigned_abs()),
    }
}
