//! Evaluation and interpolation between coefficient tables and value
//! tables, applied one axis at a time.
//!
//! Along a single axis a function `g: F_q -> F_q` with coefficients `c_i`
//! has values `g(a) = sum_i c_i a^i`. The inverse uses
//! `g(X) = sum_a g(a) (1 - (X - a)^(q-1))` and `(X - a)^(q-1) = sum_i
//! a^(q-1-i) X^i` over a prime field, which gives `c_0 = g(0)` and
//! `c_i = -sum_a g(a) a^(q-1-i)` for `i >= 1` (with `0^0 = 1`).

use super::field::Field;
use super::ring::Ring;

/// Largest `q` for which the per-line matrices are tabulated.
const TABLE_LIMIT: u32 = 1024;

pub(crate) struct LineTransform {
    field: Field,
    // Row-major q x q matrix, present only when q <= TABLE_LIMIT.
    matrix: Option<Vec<u32>>,
    kind: Kind,
}

#[derive(Clone, Copy)]
enum Kind {
    Evaluate,
    Interpolate,
    Table,
}

impl LineTransform {
    pub(crate) fn evaluate(field: Field) -> Self {
        Self::build(field, Kind::Evaluate)
    }

    pub(crate) fn interpolate(field: Field) -> Self {
        Self::build(field, Kind::Interpolate)
    }

    /// A transform given by an explicit row-major `q x q` matrix.
    pub(crate) fn from_matrix(field: Field, matrix: Vec<u32>) -> Self {
        let q = field.order() as usize;
        assert_eq!(matrix.len(), q * q);
        LineTransform {
            field,
            matrix: Some(matrix),
            kind: Kind::Table,
        }
    }

    fn build(field: Field, kind: Kind) -> Self {
        let q = field.order();
        let matrix = (q <= TABLE_LIMIT).then(|| {
            let qs = q as usize;
            let mut m = vec![0u32; qs * qs];
            for row in 0..qs {
                for col in 0..qs {
                    m[row * qs + col] = entry(field, kind, row as u32, col as u32);
                }
            }
            m
        });
        LineTransform {
            field,
            matrix,
            kind,
        }
    }

    /// `output[row] = sum_col M[row][col] * input[col]`.
    pub(crate) fn apply(&self, input: &[u32], output: &mut [u32]) {
        let f = self.field;
        let q = f.order() as usize;
        let qq = u64::from(f.order());
        for (row, out) in output.iter_mut().enumerate().take(q) {
            let mut acc = 0u64;
            for (col, &v) in input.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let m = match &self.matrix {
                    Some(mat) => mat[row * q + col],
                    None => entry(f, self.kind, row as u32, col as u32),
                };
                acc = (acc + u64::from(m) * u64::from(v)) % qq;
            }
            *out = acc as u32;
        }
    }
}

fn entry(f: Field, kind: Kind, row: u32, col: u32) -> u32 {
    let q = f.order();
    match kind {
        // value at point `row` picks up coefficient `col` times row^col
        Kind::Evaluate => f.pow(row, u64::from(col)),
        // coefficient `row` from value at point `col`
        Kind::Interpolate => {
            if row == 0 {
                u32::from(col == 0)
            } else {
                let e = u64::from(q - 1 - row);
                f.neg(f.pow(col, e))
            }
        }
        Kind::Table => unreachable!("table transforms always carry their matrix"),
    }
}

/// Applies `t` along `axis` of a table laid out in the ring's mixed-radix
/// order.
pub(crate) fn apply_axis(ring: &Ring, data: &mut [u32], axis: usize, t: &LineTransform) {
    let q = ring.q() as usize;
    let stride = ring.stride(axis);
    let block = stride * q;
    let mut line = vec![0u32; q];
    let mut out = vec![0u32; q];
    for base in (0..data.len()).step_by(block) {
        for offset in 0..stride {
            let start = base + offset;
            for (k, slot) in line.iter_mut().enumerate() {
                *slot = data[start + k * stride];
            }
            t.apply(&line, &mut out);
            for (k, &v) in out.iter().enumerate() {
                data[start + k * stride] = v;
            }
        }
    }
}

pub(crate) fn apply_all_axes(ring: &Ring, data: &mut [u32], t: &LineTransform) {
    for axis in 0..ring.n() {
        apply_axis(ring, data, axis, t);
    }
}
