//! Quaternionic Brauer classes over the rationals: local Hilbert symbols,
//! ramified places, the split decision, and the geometric-origin report
//! that ties cocycle extraction, class computation, descent and twisting
//! together.

use std::fmt;

use num::Zero;

use crate::azumaya::AzuRep;
use crate::descent::{
    descend_representation, prepare_twist, solve_norm_equation, twist_representation, Cocycle,
    TwistedAlgebra,
};
use crate::exactfield::{
    is_square_rational, legendre_symbol, square_class, QuadField, Rational, Rationals,
};
use crate::matrep::MatrixRep;
use crate::{Budget, Error, Result};

/// A place of the rationals: the archimedean one or a finite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Symbols at a set of places; the ramified set of a quaternion class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSymbols {
    pub entries: Vec<(Place, i32)>,
}

/// A quaternion Brauer class (a, b) in lowest terms: both entries
/// squarefree nonzero integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuaternionClass {
    pub a: i64,
    pub b: i64,
}

pub fn quaternion_class(a: &Rational, b: &Rational, factor_bound: u64) -> Result<QuaternionClass> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(QuaternionClass {
        a: square_class(a, factor_bound)?,
        b: square_class(b, factor_bound)?,
    })
}

fn vp(mut n: i64, p: i64) -> (u32, i64) {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (e, n)
}

/// (u - 1)/2 mod 2 for odd u: zero iff u = 1 mod 4.
fn eps(u: i64) -> u32 {
    debug_assert!(u % 2 != 0);
    if u.rem_euclid(4) == 1 {
        0
    } else {
        1
    }
}

/// (u^2 - 1)/8 mod 2 for odd u: zero iff u = +-1 mod 8.
fn omega(u: i64) -> u32 {
    debug_assert!(u % 2 != 0);
    let r = u.rem_euclid(8);
    if r == 1 || r == 7 {
        0
    } else {
        1
    }
}

/// Local Hilbert symbol on squarefree nonzero integer representatives.
pub fn hilbert_symbol_int(a: i64, b: i64, place: Place) -> i32 {
    assert!(a != 0 && b != 0, "nonzero inputs required");
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = vp(a, 2);
            let (beta, v) = vp(b, 2);
            let exponent = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if exponent.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = vp(a, p as i64);
            let (beta, v) = vp(b, p as i64);
            let e = ((p - 1) / 2 % 2) as u32;
            let sign = if (alpha * beta * e).is_multiple_of(2) { 1 } else { -1 };
            let lu = legendre_symbol(u, p).expect("odd prime");
            let lv = legendre_symbol(v, p).expect("odd prime");
            let mut out = sign;
            if beta % 2 == 1 {
                out *= lu;
            }
            if alpha % 2 == 1 {
                out *= lv;
            }
            out
        }
    }
}

/// Classical Hilbert symbol (a, b)_v after square-class reduction.
pub fn hilbert_symbol(
    a: &Rational,
    b: &Rational,
    place: Place,
    factor_bound: u64,
) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if let Place::Prime(p) = place {
        if p != 2 && !crate::exactfield::is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
    }
    let a0 = square_class(a, factor_bound)?;
    let b0 = square_class(b, factor_bound)?;
    Ok(hilbert_symbol_int(a0, b0, place))
}

/// The places where the class (a, b) ramifies: symbols at infinity, 2 and
/// the odd primes dividing a*b, restricted to the -1 entries.  The count
/// is always even; this is verified, not assumed.
pub fn ramified_places(a: &Rational, b: &Rational, factor_bound: u64) -> Result<PlaceSymbols> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let a0 = square_class(a, factor_bound)?;
    let b0 = square_class(b, factor_bound)?;
    ramified_places_int(a0, b0, factor_bound)
}

pub fn ramified_places_int(a0: i64, b0: i64, factor_bound: u64) -> Result<PlaceSymbols> {
    let mut places = vec![Place::Infinity, Place::Prime(2)];
    let product = (a0 as i128 * b0 as i128).unsigned_abs();
    let mut primes = crate::exactfield::factor_u64(
        u64::try_from(product).map_err(|_| Error::InvalidInput("inputs too large".into()))?,
        factor_bound,
    )?
    .into_iter()
    .map(|(p, _)| p)
    .filter(|&p| p != 2)
    .collect::<Vec<_>>();
    primes.sort_unstable();
    places.extend(primes.into_iter().map(Place::Prime));
    let mut entries = Vec::new();
    for place in places {
        let s = hilbert_symbol_int(a0, b0, place);
        if s == -1 {
            entries.push((place, s));
        }
    }
    if entries.len() % 2 != 0 {
        return Err(Error::Internal(format!(
            "odd number of ramified places for ({a0}, {b0}); reciprocity violated"
        )));
    }
    Ok(PlaceSymbols { entries })
}

/// Zero Brauer class: no ramified places.
pub fn is_split(a: &Rational, b: &Rational, factor_bound: u64) -> Result<bool> {
    Ok(ramified_places(a, b, factor_bound)?.entries.is_empty())
}

pub fn is_split_int(a0: i64, b0: i64) -> bool {
    ramified_places_int(a0, b0, crate::exactfield::DEFAULT_TRIAL_BOUND)
        .expect("split decision on desk-scale integers")
        .entries
        .is_empty()
}

/// Demonstration on the double cover cut out by t^2 + lambda t + 1: the
/// class of a point is trivial exactly when the discriminant
/// lambda^2 - 4 is positive (real-sign mode) or a rational square
/// (rational-square mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemoMode {
    RealSign,
    RationalSquare,
}

pub fn quadratic_origin_demo(lambda: &Rational, mode: DemoMode) -> Result<bool> {
    let four = Rational::from_integer(4.into());
    let disc = lambda * lambda - four;
    if disc.is_zero() {
        return Err(Error::DegenerateDiscriminant);
    }
    match mode {
        DemoMode::RealSign => Ok(disc > Rational::zero()),
        DemoMode::RationalSquare => Ok(is_square_rational(&disc)),
    }
}

/// The witness produced by the origin decision: either an isomorphic
/// representation with rational entries, or the twisted representation in
/// the fixed algebra of the cocycle.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum OriginWitness {
    Descended(MatrixRep<Rationals>),
    Twisted {
        algebra: TwistedAlgebra,
        rep: AzuRep<Rationals>,
    },
}

/// Full origin decision for a Schur representation over L = Q(sqrt(d))
/// isomorphic to its conjugate: the class (d, lambda), the split decision,
/// and a constructive witness either way.
#[derive(Clone, Debug)]
pub struct OriginReport {
    pub lambda: Rational,
    pub class: QuaternionClass,
    pub origin: bool,
    pub cocycle: Cocycle,
    pub witness: OriginWitness,
}

pub fn geometric_origin_report(
    rep: &MatrixRep<QuadField>,
    seed: u64,
    budget: &Budget,
) -> Result<OriginReport> {
    let cocycle = prepare_twist(rep, seed)?;
    let d = cocycle.d();
    let lambda = cocycle.lambda().clone();
    let lambda_class = square_class(&lambda, budget.factor_bound)?;
    let class = QuaternionClass {
        a: d,
        b: lambda_class,
    };
    let ramified = ramified_places_int(d, lambda_class, budget.factor_bound)?;
    let origin = ramified.entries.is_empty();
    let witness = if origin {
        let c = solve_norm_equation(d, &lambda, budget.norm_height).ok_or_else(|| {
            Error::BudgetExhausted(format!(
                "norm equation N(c) = {lambda} over Q(sqrt({d})) unsolved within height {} \
                 despite a split certificate",
                budget.norm_height
            ))
        })?;
        let descended = descend_representation(rep, &cocycle, &c, seed ^ 0x9e3779b9)?;
        OriginWitness::Descended(descended)
    } else {
        let (algebra, twisted_rep) = twist_representation(rep, &cocycle)?;
        OriginWitness::Twisted {
            algebra,
            rep: twisted_rep,
        }
    };
    Ok(OriginReport {
        lambda,
        class,
        origin,
        cocycle,
        witness,
    })
}
