use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

use super::GeomError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, GeomError> {
    let err = || GeomError::Parse(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d == BigInt::from(0) {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Renders as `"n"` for integers and `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), Rational::new((-2).into(), 3.into()));
        assert_eq!(parse_rational("5/-10").unwrap(), Rational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&rat(-7)), "-7");
    }
}
