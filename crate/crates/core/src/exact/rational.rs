//! Arbitrary-precision rationals and their text form.
//!
//! Rationals are `num_rational::BigRational`, which is kept in canonical form
//! (positive denominator, coprime parts) by every arithmetic operation. This
//! module adds the sign map, the `"p/q"` serialization and an exact parser
//! that accepts fractions, integers and short decimal literals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Sign;

pub type Rational = num_rational::BigRational;

/// Maximum number of digits accepted in a decimal literal such as `0.125`.
pub const MAX_DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("decimal literal `{0}` has more than {MAX_DECIMAL_DIGITS} digits")]
    TooManyDigits(String),
}

/// `p/q` shorthand for tests and fixtures. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn rat_sign(q: &Rational) -> Sign {
    if q.is_zero() {
        Sign::Zero
    } else if q.is_positive() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Canonical `"p/q"` form; integers are written with denominator 1.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `p/q`, `p` or a decimal literal like `-0.25` into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let text = input.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());

    if let Some((num, den)) = text.split_once('/') {
        let numer = BigInt::from_str(num.trim()).map_err(|_| malformed())?;
        let den = den.trim();
        if den.starts_with('+') || den.starts_with('-') || !is_digits(den) {
            return Err(malformed());
        }
        let denom = BigInt::from_str(den).map_err(|_| malformed())?;
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(numer, denom));
    }

    let (negative, body) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if (whole.is_empty() && frac.is_empty())
        || (!whole.is_empty() && !is_digits(whole))
        || (!frac.is_empty() && !is_digits(frac))
        || (body.contains('.') && frac.is_empty() && whole.is_empty())
    {
        return Err(malformed());
    }
    if body.contains('.') && whole.len() + frac.len() > MAX_DECIMAL_DIGITS {
        return Err(ParseRationalError::TooManyDigits(text.to_string()));
    }
    let digits = format!("{whole}{frac}");
    let mut numer = BigInt::from_str(&digits).map_err(|_| malformed())?;
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10u32), frac.len());
    Ok(Rational::new(numer, denom))
}

/// Least common multiple of the denominators, i.e. the smallest positive
/// integer that clears all of them.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| {
        num_integer::Integer::lcm(&acc, q.denom())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_of_rationals() {
        assert_eq!(rat_sign(&rat(-3, 7)), Sign::Neg);
        assert_eq!(rat_sign(&int(0)), Sign::Zero);
        assert_eq!(rat_sign(&rat(1, 2)), Sign::Pos);
    }

    #[test]
    fn canonical_form() {
        let q = rat(6, -8);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(4));
        assert_eq!(format_rational(&q), "-3/4");
        assert_eq!(format_rational(&int(5)), "5/1");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("0.5").unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(parse_rational("-2/6").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("2.").unwrap(), int(2));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        for bad in ["abc", "1/", "/2", "1/-2", "1.2.3", "1e-3", ".", "-", "0x10", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad} should not parse");
        }
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_rational("0.1234567890123"),
            Err(ParseRationalError::TooManyDigits(_))
        ));
        assert!(parse_rational("0.12345678901").is_ok());
    }

    #[test]
    fn common_denominator_clears() {
        let values = [rat(1, 4), rat(5, 6), int(3)];
        let d = common_denominator(values.iter());
        assert_eq!(d, BigInt::from(12));
        for q in &values {
            assert!((q * Rational::from_integer(d.clone())).is_integer());
        }
    }
}
