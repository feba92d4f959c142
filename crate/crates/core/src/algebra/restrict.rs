//! Restriction of a polynomial to an affine hyperplane `{ell(x) = alpha}`.

use std::fmt;

use super::poly::{EvalTable, Polynomial};
use super::ring::Ring;
use crate::error::{Error, Result};

/// A homogeneous linear form `ell(X) = sum_i c_i X_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct LinearForm {
    coeffs: Vec<u32>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<u32>) -> Self {
        LinearForm { coeffs }
    }

    /// The form `X_{i+1}`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient.
    pub fn pivot(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn eval(&self, ring: &Ring, x: &[u32]) -> u32 {
        let f = ring.field();
        self.coeffs
            .iter()
            .zip(x)
            .fold(0, |acc, (&c, &v)| f.add(acc, f.mul(c, v)))
    }

    /// One representative per nonzero scalar class: forms whose first
    /// nonzero coefficient is 1, in lexicographic order of the coefficient
    /// vector. There are `(q^n - 1) / (q - 1)` of them.
    pub fn normalized_forms(ring: &Ring) -> Vec<LinearForm> {
        let q = ring.q();
        let mut out = Vec::new();
        for idx in 0..ring.size() {
            let digits = ring.digits(idx);
            if let Some(p) = digits.iter().position(|&c| c != 0) {
                if digits[p] == 1 {
                    out.push(LinearForm::new(digits));
                }
            }
        }
        debug_assert_eq!(out.len(), (ring.size() - 1) / (q as usize - 1));
        out
    }

    fn check(&self, ring: &Ring) -> Result<usize> {
        if self.coeffs.len() != ring.n() {
            return Err(Error::Shape {
                expected: ring.n(),
                actual: self.coeffs.len(),
            });
        }
        if self.coeffs.iter().any(|&c| c >= ring.q()) {
            return Err(Error::Parameter(format!(
                "form coefficients must be < {}",
                ring.q()
            )));
        }
        self.pivot().ok_or(Error::DegenerateForm)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "X{}", i + 1)?;
            } else {
                write!(f, "{c}*X{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Maps a point `y` of F_q^{n-1} to the point of the hyperplane
/// `{ell = alpha}` with those coordinates.
///
/// The change of variables keeps every `x_i` with `i` different from the
/// pivot (the first nonzero coefficient `p` of `ell`), in order, and
/// solves `x_p = c_p^{-1} (alpha - sum_{i != p} c_i x_i)`.
pub fn hyperplane_point(ring: &Ring, ell: &LinearForm, alpha: u32, y: &[u32]) -> Result<Vec<u32>> {
    let pivot = ell.check(ring)?;
    if y.len() + 1 != ring.n() {
        return Err(Error::Shape {
            expected: ring.n() - 1,
            actual: y.len(),
        });
    }
    let f = ring.field();
    let mut x = Vec::with_capacity(ring.n());
    x.extend_from_slice(&y[..pivot]);
    x.push(0);
    x.extend_from_slice(&y[pivot..]);
    let rest = ell.eval(ring, &x);
    let inv = f.inv(ell.coeffs[pivot]).expect("pivot is nonzero");
    x[pivot] = f.mul(inv, f.sub(f.reduce(u64::from(alpha)), rest));
    Ok(x)
}

/// `f|_{ell = alpha}` as an element of P_q(n-1).
pub fn restrict(f: &Polynomial, ell: &LinearForm, alpha: u32) -> Result<Polynomial> {
    let ring = f.ring();
    ell.check(&ring)?;
    let sub = ring.drop_var()?;
    let values = f.evaluate_all();
    let mut out = Vec::with_capacity(sub.size());
    for idx in 0..sub.size() {
        let y = sub.digits(idx);
        let x = hyperplane_point(&ring, ell, alpha, &y)?;
        out.push(values.value_at(&x));
    }
    Ok(EvalTable::new(sub, out)?.interpolate())
}
