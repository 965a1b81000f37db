use std::fmt;

use num::{One, Zero};

use super::prime::{PrimeField, PrimeFieldElem};
use super::quad::{QuadElem, QuadField};
use super::rational::Rational;
use crate::{Error, Result};

/// A field of scalars, in the structure-object style: the descriptor owns
/// the field data (modulus, radicand) and the elements stay plain values.
#[allow(clippy::wrong_self_convention)] // the field builds its own elements
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// None exactly on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_integer(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; fails only over F_p when p divides the
    /// denominator.
    fn from_rational(&self, x: &Rational) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn from_integer(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn from_rational(&self, x: &Rational) -> Result<Rational> {
        Ok(x.clone())
    }
}

impl Field for QuadField {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        self.embed(Rational::zero())
    }

    fn one(&self) -> QuadElem {
        self.embed(Rational::one())
    }

    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        debug_assert_eq!(a.d, self.d());
        a.add(b)
    }

    fn neg(&self, a: &QuadElem) -> QuadElem {
        a.neg()
    }

    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        debug_assert_eq!(a.d, self.d());
        a.mul(b)
    }

    fn inv(&self, a: &QuadElem) -> Option<QuadElem> {
        a.inv()
    }

    fn is_zero(&self, a: &QuadElem) -> bool {
        a.is_zero()
    }

    fn from_integer(&self, n: i64) -> QuadElem {
        self.embed(Rational::from_integer(n.into()))
    }

    fn from_rational(&self, x: &Rational) -> Result<QuadElem> {
        Ok(self.embed(x.clone()))
    }
}

impl Field for PrimeField {
    type Elem = PrimeFieldElem;

    fn zero(&self) -> PrimeFieldElem {
        self.elem(0)
    }

    fn one(&self) -> PrimeFieldElem {
        self.elem(1)
    }

    fn add(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        let p = self.modulus();
        assert_eq!(a.p, p, "mixed prime fields");
        assert_eq!(b.p, p, "mixed prime fields");
        PrimeFieldElem {
            value: ((a.value as u128 + b.value as u128) % p as u128) as u64,
            p,
        }
    }

    fn neg(&self, a: &PrimeFieldElem) -> PrimeFieldElem {
        let p = self.modulus();
        PrimeFieldElem {
            value: (p - a.value % p) % p,
            p,
        }
    }

    fn mul(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        let p = self.modulus();
        assert_eq!(a.p, p, "mixed prime fields");
        assert_eq!(b.p, p, "mixed prime fields");
        PrimeFieldElem {
            value: ((a.value as u128 * b.value as u128) % p as u128) as u64,
            p,
        }
    }

    fn inv(&self, a: &PrimeFieldElem) -> Option<PrimeFieldElem> {
        if a.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let p = self.modulus() as i128;
        let (mut r0, mut r1) = (a.value as i128, p);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(PrimeFieldElem {
            value: s0.rem_euclid(p) as u64,
            p: self.modulus(),
        })
    }

    fn is_zero(&self, a: &PrimeFieldElem) -> bool {
        a.value == 0
    }

    fn from_integer(&self, n: i64) -> PrimeFieldElem {
        self.elem(n)
    }

    fn from_rational(&self, x: &Rational) -> Result<PrimeFieldElem> {
        use num::ToPrimitive;
        let p = self.modulus();
        let num = (x.numer() % p).to_i64().expect("residue fits");
        let den = (x.denom() % p).to_i64().expect("residue fits");
        let d = self.elem(den);
        let inv = self.inv(&d).ok_or_else(|| Error::CoefficientNotRepresentable {
            p,
            coeff: x.to_string(),
        })?;
        Ok(self.mul(&self.elem(num), &inv))
    }
}
