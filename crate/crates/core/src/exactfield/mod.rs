//! Exact scalar arithmetic: arbitrary-precision rationals, quadratic
//! extensions of the rationals with their Galois conjugation, and small
//! prime fields.  No floating point appears anywhere; exactness is
//! load-bearing for every rank computation downstream.

mod factor;
mod field;
mod prime;
mod quad;
mod rational;

pub use factor::{factor_u64, is_squarefree_i64, square_class, squarefree_part_i64, DEFAULT_TRIAL_BOUND};
pub use field::{Field, Rationals};
pub use prime::{is_prime, legendre_symbol, PrimeField, PrimeFieldElem};
pub use quad::{quad_conjugate, quad_norm, QuadElem, QuadField};
pub use rational::{is_square_rational, parse_rational, rat, rat_int, sqrt_rational, Rational};
