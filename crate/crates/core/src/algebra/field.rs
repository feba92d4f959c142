//! Arithmetic in the prime field F_q.

use std::fmt;

use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q < 4 {
        return true;
    }
    if q.is_multiple_of(2) {
        return false;
    }
    let mut p = 3u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            return false;
        }
        p += 2;
    }
    true
}

/// The prime field F_q. Elements are represented by their canonical
/// residues in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    q: u32,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q > u64::from(u32::MAX) {
            return Err(Error::NotPrime(q));
        }
        Ok(Field { q: q as u32 })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % u64::from(self.q)) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = u64::from(a) + u64::from(b);
        let q = u64::from(self.q);
        (if s >= q { s - q } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (u64::from(a) + u64::from(self.q) - u64::from(b)) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.q)) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.q) {
            None
        } else {
            Some(self.pow(a, u64::from(self.q) - 2))
        }
    }

    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            modulus: self.q,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// A single scalar of F_q together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn new(value: u64, q: u64) -> Result<Self> {
        Ok(Field::new(q)?.element(value))
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
