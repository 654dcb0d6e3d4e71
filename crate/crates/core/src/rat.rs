//! Exact rational scalars.
//!
//! `Rat` is GMP-backed and always canonical: gcd(|num|, den) = 1, den > 0.

use crate::error::{Error, Result};
pub use rug::{Integer, Rational};

pub type Rat = Rational;

/// Zero test (GMP rationals compare against machine ints directly).
pub trait RatExt {
    fn is_zero(&self) -> bool;
}

impl RatExt for Rational {
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

pub fn rat_i(n: i64) -> Rat {
    Rational::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rational::from((n, d))
}

/// Parse "p/q" or "p". Whitespace is not accepted; signs go on the numerator.
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::InvalidParameters(format!("cannot parse rational {s:?}: {e}")))
}

/// Canonical "p/q" rendering ("p" when q = 1).
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rat) -> bool {
    *r.denom() == 1
}

/// Floor of a rational (denominator is canonical, hence positive).
pub fn rat_floor(r: &Rat) -> Integer {
    use rug::ops::DivRounding;
    r.numer().clone().div_floor(r.denom().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_canonical() {
        let r = parse_rat("-6/4").unwrap();
        assert_eq!(rat_string(&r), "-3/2");
        assert_eq!(parse_rat("5").unwrap(), rat_i(5));
        assert!(parse_rat("a/b").is_err());
    }

    #[test]
    fn floor_negative() {
        assert_eq!(rat_floor(&rat(-5, 2)), -3);
        assert_eq!(rat_floor(&rat(5, 2)), 2);
        assert_eq!(rat_floor(&rat(7, 1)), 7);
    }
}
