//! Parameters `(q, n)` of the quotient ring P_q(n) and the mixed-radix
//! indexing shared by coefficient tables and evaluation tables.

use std::fmt;

use super::field::Field;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Default cap on `q^n`, the number of points (and monomials) of a ring.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// The ring P_q(n) = F_q[X_1..X_n] / (X_i^q - X_i).
///
/// Both monomials and points of F_q^n are addressed by the mixed-radix
/// index `sum_i e_i q^(n-1-i)`, so `X_1` (resp. `x_1`) is the most
/// significant digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    n: usize,
    size: usize,
}

impl Ring {
    pub fn new(q: u64, n: usize) -> Result<Self> {
        Self::with_cap(q, n, DEFAULT_CAP)
    }

    pub fn with_cap(q: u64, n: usize, cap: u64) -> Result<Self> {
        Self::from_field(Field::new(q)?, n, cap)
    }

    pub fn from_field(field: Field, n: usize, cap: u64) -> Result<Self> {
        let q = field.order();
        let size = u32::try_from(n)
            .ok()
            .and_then(|n| u64::from(q).checked_pow(n))
            .filter(|&s| s <= cap)
            .ok_or(Error::TooLarge { q, n, cap })?;
        Ok(Ring {
            field,
            n,
            size: size as usize,
        })
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.order()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^n`: the number of monomials, and of points.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Largest possible total degree, `n(q-1)`.
    pub fn max_degree(&self) -> u32 {
        self.n as u32 * (self.q() - 1)
    }

    /// Distance between consecutive entries along `axis`.
    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        debug_assert!(axis < self.n);
        (self.q() as usize).pow((self.n - 1 - axis) as u32)
    }

    /// The ring in `n - 1` variables over the same field.
    pub fn drop_var(&self) -> Result<Ring> {
        if self.n == 0 {
            return Err(Error::Parameter("ring has no variables".into()));
        }
        Ok(Ring {
            field: self.field,
            n: self.n - 1,
            size: self.size / self.q() as usize,
        })
    }

    pub fn index_of(&self, digits: &[u32]) -> usize {
        debug_assert_eq!(digits.len(), self.n);
        let q = self.q() as usize;
        digits.iter().fold(0usize, |acc, &d| acc * q + d as usize)
    }

    pub fn monomial_index(&self, m: &Monomial) -> Result<usize> {
        if m.num_vars() != self.n || !m.is_reduced(self.q()) {
            return Err(Error::Parameter(format!(
                "monomial {m} is not a reduced monomial of P_{}({})",
                self.q(),
                self.n
            )));
        }
        Ok(self.index_of(m.exps()))
    }

    pub fn digits_into(&self, mut idx: usize, out: &mut [u32]) {
        let q = self.q() as usize;
        for slot in out.iter_mut().rev() {
            *slot = (idx % q) as u32;
            idx /= q;
        }
    }

    pub fn digits(&self, idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.n];
        self.digits_into(idx, &mut out);
        out
    }

    pub fn monomial(&self, idx: usize) -> Monomial {
        Monomial::new(self.digits(idx))
    }

    pub fn degree_of_index(&self, mut idx: usize) -> u32 {
        let q = self.q() as usize;
        let mut deg = 0u32;
        for _ in 0..self.n {
            deg += (idx % q) as u32;
            idx /= q;
        }
        deg
    }

    /// Total degree of every monomial, by index.
    pub fn degree_table(&self) -> Vec<u32> {
        let q = self.q() as usize;
        let mut table = vec![0u32; self.size];
        // degree(idx) = degree(idx / q) + idx % q
        for idx in 1..self.size {
            table[idx] = table[idx / q] + (idx % q) as u32;
        }
        table
    }

    /// Indices of all monomials of degree at most `d`, in increasing index
    /// order. Negative `d` yields the empty list.
    pub fn monomials_up_to(&self, d: i64) -> Vec<usize> {
        if d < 0 {
            return Vec::new();
        }
        self.degree_table()
            .iter()
            .enumerate()
            .filter(|&(_, &deg)| i64::from(deg) <= d)
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParameterMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} n={}", self.q(), self.n)
    }
}
