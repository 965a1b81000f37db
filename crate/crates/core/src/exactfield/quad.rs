use std::fmt;

use num::Zero;

use super::factor::{is_squarefree_i64, DEFAULT_TRIAL_BOUND};
use super::rational::Rational;
use crate::{Error, Result};

/// The quadratic field Q(sqrt(d)) for a squarefree integer d, d != 0, 1.
///
/// Non-squarefree input is rejected rather than silently reduced, so two
/// equal `QuadField` values always denote the same field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadField {
    d: i64,
}

/// Element a + b*sqrt(d).  Carries d so that elements of different fields
/// cannot be mixed.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    pub d: i64,
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))", self.a, self.b, self.d)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        Self::new_bounded(d, DEFAULT_TRIAL_BOUND)
    }

    pub fn new_bounded(d: i64, factor_bound: u64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree_i64(d, factor_bound)? {
            return Err(Error::InvalidDiscriminant(d));
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadElem {
        QuadElem { a, b, d: self.d }
    }

    /// Embedding of the rationals.
    pub fn embed(&self, a: Rational) -> QuadElem {
        self.elem(a, Rational::zero())
    }

    pub fn sqrt_d(&self) -> QuadElem {
        self.elem(Rational::zero(), Rational::from_integer(1.into()))
    }
}

impl QuadElem {
    fn assert_same_field(&self, other: &QuadElem) {
        assert_eq!(self.d, other.d, "mixed quadratic fields: {} vs {}", self.d, other.d);
    }

    pub fn add(&self, other: &QuadElem) -> QuadElem {
        self.assert_same_field(other);
        QuadElem {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d,
        }
    }

    pub fn sub(&self, other: &QuadElem) -> QuadElem {
        self.assert_same_field(other);
        QuadElem {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d,
        }
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }

    pub fn mul(&self, other: &QuadElem) -> QuadElem {
        self.assert_same_field(other);
        let d = Rational::from_integer(self.d.into());
        QuadElem {
            a: &self.a * &other.a + &(&self.b * &other.b) * &d,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        }
    }

    /// Galois conjugate a - b*sqrt(d).
    pub fn conjugate(&self) -> QuadElem {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm N(x) = x * conj(x) = a^2 - d*b^2, a rational number.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &Rational::from_integer(self.d.into()))
    }

    pub fn inv(&self) -> Option<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadElem {
            a: &c.a / &n,
            b: &c.b / &n,
            d: self.d,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational number this element equals, if its radical part is zero.
    pub fn rational_part(&self) -> Option<Rational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }
}

/// Galois conjugation as a standalone operation.
pub fn quad_conjugate(x: &QuadElem) -> QuadElem {
    x.conjugate()
}

/// Field norm as a standalone operation.
pub fn quad_norm(x: &QuadElem) -> Rational {
    x.norm()
}
