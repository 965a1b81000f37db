//! Exact-arithmetic library for representations of finitely presented
//! associative algebras in matrix and quaternion algebras.
//!
//! The crate computes commutants and Schur loci of matrix representations,
//! builds quaternion and general structure-constant algebras, performs
//! quadratic Galois twisting and descent, and decides geometric origin of
//! isomorphism classes through quaternionic Brauer classes over the
//! rationals.  All arithmetic is exact: rationals of arbitrary precision,
//! quadratic extensions of the rationals, and small prime fields.

// index-based loops mirror the summation formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod azumaya;
pub mod brauer;
pub mod descent;
mod error;
pub mod exactfield;
pub mod linalg;
pub mod matrep;
pub mod ncpoly;
pub mod quiverkit;
mod rng;

pub use error::{Error, Result};
pub use rng::SplitMix64;

/// Search limits for the operations that explore a bounded space.
///
/// Every bound is explicit so that reports can state exactly which search
/// window was used; exceeding a bound is a reported condition, never a
/// wrong answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Trial-division limit for integer factorization.
    pub factor_bound: u64,
    /// Height limit for solutions of the quadratic norm equation.
    pub norm_height: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            factor_bound: 1_000_000,
            norm_height: 200,
        }
    }
}
