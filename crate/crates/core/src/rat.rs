//! Exact rational scalars.
//!
//! Backed by [`num_rational::BigRational`], which keeps every value in
//! lowest terms with a positive denominator. All arithmetic is closed and
//! exact; the crate never touches floating point.

use num_bigint::BigInt;
use num_traits::One;
use std::str::FromStr;
use thiserror::Error;

/// Arbitrary-precision exact rational.
pub type Rat = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The fraction `n/d` as a rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed rational `{input}`: expected `p/q` or an integer with q > 0")]
pub struct ParseRatError {
    pub input: String,
}

/// Parses `"p/q"` or `"n"` into an exact rational.
///
/// Accepts optional sign on the numerator, rejects zero denominators,
/// decimal points, and anything else.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    Rat::from_str(s).map_err(|_| ParseRatError { input: s.to_owned() })
}

/// Canonical rendering: `"p/q"` in lowest terms, or `"n"` when the
/// denominator is 1. Never produces a decimal point.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` has denominator 1.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-3/2", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_reduces_to_lowest_terms() {
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("-4/6").unwrap()), "-2/3");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1.5", "1/0", "a", "1/2/3", "inf", "nan"] {
            assert!(parse_rat(s).is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        // (a/b + c/d) - c/d == a/b, on values that would break floats.
        let a = ratio(1, 3);
        let c = ratio(1, 10);
        assert_eq!(&(&a + &c) - &c, a);
        assert!((&ratio(1, 3) + &ratio(2, 3) - rat(1)).is_zero());
    }
}
