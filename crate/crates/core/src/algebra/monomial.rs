//! Monomials of P_q(n) and the graded lexicographic order.

use std::cmp::Ordering;
use std::fmt;

/// A monomial `X_1^{e_1} ... X_n^{e_n}` stored as its exponent vector.
///
/// Ordering is graded lexicographic: higher total degree is larger, ties
/// are broken at the first differing exponent, larger exponent winning.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The single variable `X_{i+1}` (0-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Whether every exponent is below `q`, i.e. the monomial is reduced.
    pub fn is_reduced(&self, q: u32) -> bool {
        self.exps.iter().all(|&e| e < q)
    }

    /// Product in F_q[X] (exponents add, no reduction).
    pub fn unreduced_mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Product in P_q(n): any exponent `e >= q` becomes `e - (q-1)` until
    /// it lies in `1..q`, which is `X^q = X` applied repeatedly.
    pub fn reduced_mul(&self, other: &Monomial, q: u32) -> Monomial {
        let mut m = self.unreduced_mul(other);
        for e in &mut m.exps {
            *e = reduce_exponent(*e, q);
        }
        m
    }

    /// Monomials are disjoint when the reduced and unreduced products agree,
    /// i.e. every per-variable exponent sum stays below `q`.
    pub fn is_disjoint(&self, other: &Monomial, q: u32) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a + b < q)
    }

    /// Whether `self` divides `other` coordinatewise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

#[inline]
pub(crate) fn reduce_exponent(e: u32, q: u32) -> u32 {
    if e < q {
        e
    } else {
        // e >= q >= 2: X^e = X^{e - k(q-1)} with the result in 1..q.
        (e - 1) % (q - 1) + 1
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded-lex comparison of two monomials.
pub fn compare_graded_lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.cmp(b)
}

/// Result of multiplying two monomials both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialProduct {
    /// Exponent sum; may have entries `>= q`.
    pub unreduced: Monomial,
    /// Whether the unreduced product is itself a reduced monomial.
    pub unreduced_is_reduced: bool,
    pub reduced: Monomial,
    pub disjoint: bool,
}

pub fn monomial_product(m1: &Monomial, m2: &Monomial, q: u32) -> MonomialProduct {
    let unreduced = m1.unreduced_mul(m2);
    let reduced = m1.reduced_mul(m2, q);
    let unreduced_is_reduced = unreduced.is_reduced(q);
    MonomialProduct {
        disjoint: unreduced == reduced,
        unreduced,
        unreduced_is_reduced,
        reduced,
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{}", i + 1)?;
            } else {
                write!(f, "X{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
