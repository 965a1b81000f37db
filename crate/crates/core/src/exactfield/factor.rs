use num::bigint::BigInt;
use num::{Signed, ToPrimitive, Zero};

use super::rational::Rational;
use crate::{Error, Result};

/// Default trial-division bound; sufficient at desk scale.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Factor `n > 0` by trial division up to `bound`.
///
/// Fails with `FactorizationTooLarge` when a cofactor survives that cannot
/// be certified prime or square; never returns a wrong factorization.
pub fn factor_u64(n: u64, bound: u64) -> Result<Vec<(u64, u32)>> {
    assert!(n > 0, "factor_u64 needs a positive argument");
    let mut out = Vec::new();
    let mut rest = n;
    let mut p: u64 = 2;
    while p <= bound && p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest <= bound.saturating_mul(bound) {
            // every factor of rest exceeds sqrt(rest) or the loop ended early,
            // so rest is prime
            out.push((rest, 1));
        } else {
            return Err(Error::FactorizationTooLarge {
                value: n.to_string(),
                bound,
            });
        }
    }
    Ok(out)
}

/// Squarefree part of a nonzero integer, sign preserved.
pub fn squarefree_part_i64(n: i64, bound: u64) -> Result<i64> {
    assert!(n != 0);
    let f = factor_u64(n.unsigned_abs(), bound)?;
    let mut part: i64 = if n < 0 { -1 } else { 1 };
    for (p, e) in f {
        if e % 2 == 1 {
            part = part
                .checked_mul(p as i64)
                .ok_or_else(|| Error::InvalidInput(format!("squarefree part of {n} overflows")))?;
        }
    }
    Ok(part)
}

pub fn is_squarefree_i64(n: i64, bound: u64) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    Ok(factor_u64(n.unsigned_abs(), bound)?.iter().all(|&(_, e)| e == 1))
}

/// Signed squarefree integer representing the square class of a nonzero
/// rational: `x` and the result differ by a nonzero rational square.
pub fn square_class(x: &Rational, bound: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    // x = p/q ~ p*q modulo squares
    let prod: BigInt = x.numer() * x.denom();
    let sign = if prod.is_negative() { -1i64 } else { 1 };
    let mut abs = prod.abs();
    // peel off the square part of huge inputs cheaply first
    let root = abs.sqrt();
    if (&root * &root) == abs {
        return Ok(sign);
    }
    // remove small square factors so that the remainder fits in u64 if possible
    let mut part = BigInt::from(1);
    let mut p = BigInt::from(2u32);
    let big_bound = BigInt::from(bound);
    while p <= big_bound && (&p * &p) <= abs {
        if (&abs % &p).is_zero() {
            let mut e = 0u32;
            while (&abs % &p).is_zero() {
                abs /= &p;
                e += 1;
            }
            if e % 2 == 1 {
                part *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if abs > BigInt::from(1u32) {
        // cofactor with all factors above the bound
        if abs <= (&big_bound * &big_bound) {
            part *= &abs; // certified prime
        } else {
            let r = abs.sqrt();
            if (&r * &r) == abs {
                // perfect square cofactor contributes nothing
            } else {
                return Err(Error::FactorizationTooLarge {
                    value: (x.numer() * x.denom()).to_string(),
                    bound,
                });
            }
        }
    }
    let v = part
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("square class does not fit in i64".into()))?;
    Ok(sign * v)
}
