use num::bigint::BigInt;
use num::Signed;

use crate::{Error, Result};

/// Exact rational number.  `num::BigRational` already maintains the
/// invariants we need: numerator and denominator coprime, denominator
/// positive, zero stored as 0/1.
pub type Rational = num::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|_| Error::InvalidInput(format!("cannot parse rational from {t:?}")))
}

/// Exact square root when one exists.
pub fn sqrt_rational(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// Whether `x` is the square of a rational number.  Decided exactly via
/// integer square roots of the reduced numerator and denominator.
pub fn is_square_rational(x: &Rational) -> bool {
    sqrt_rational(x).is_some()
}
