use crate::{Error, Result};

/// Prime field F_p for a prime p < 2^31; arithmetic uses 128-bit
/// intermediates, so no operation can overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Element of F_p; carries its modulus so that values from different
/// fields can never be combined silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFieldElem {
    pub value: u64,
    pub p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = (base % p) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidInput(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElem {
        PrimeFieldElem {
            value: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }
}

/// Legendre symbol (a|p) for an odd prime p, via Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i32> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = pow_mod(r, (p - 1) / 2, p);
    if e == 1 {
        Ok(1)
    } else {
        Ok(-1)
    }
}
