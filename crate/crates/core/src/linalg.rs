//! Dense Gaussian elimination over a prime field.

use crate::algebra::Field;

/// Row-major matrix over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Brings the matrix to reduced row echelon form in place and returns
    /// the pivot columns.
    pub fn row_reduce(&mut self, field: Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, r * self.cols + k);
                }
            }
            let inv = field.inv(self.get(r, c)).expect("pivot is nonzero");
            for k in c..self.cols {
                let v = field.mul(self.get(r, k), inv);
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for k in c..self.cols {
                    let v = field.sub(self.get(i, k), field.mul(factor, self.get(r, k)));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: Field) -> usize {
        self.clone().row_reduce(field).len()
    }

    /// A nonzero `x` with `M x = 0`, if the columns are dependent.
    pub fn kernel_vector(&self, field: Field) -> Option<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(field);
        let free = (0..m.cols).find(|c| !pivots.contains(c))?;
        let mut x = vec![0u32; m.cols];
        x[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = field.neg(m.get(r, free));
        }
        Some(x)
    }
}

/// Rank of the matrix whose rows are `rows`, each of length `cols`.
pub fn rank_of_rows(field: Field, rows: &[Vec<u32>], cols: usize) -> usize {
    Matrix::from_rows(rows, cols).rank(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let f = Field::new(3).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]], 3);
        assert_eq!(m.rank(f), 2);
        let x = m.kernel_vector(f).unwrap();
        for r in 0..3 {
            let s: u32 = (0..3).map(|c| m.get(r, c) * x[c]).sum::<u32>() % 3;
            assert_eq!(s, 0);
        }
        assert!(x.iter().any(|&v| v != 0));
        let id = Matrix::from_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2);
        assert_eq!(id.rank(f), 2);
        assert!(id.kernel_vector(f).is_none());
        assert_eq!(Matrix::zeros(2, 3).rank(f), 0);
    }

    #[test]
    fn rank_matches_brute_force_over_f2() {
        let f = Field::new(2).unwrap();
        // all 3x3 binary matrices: rank = log2 of the number of distinct row-space vectors
        for code in 0u32..512 {
            let rows: Vec<Vec<u32>> = (0..3)
                .map(|r| (0..3).map(|c| (code >> (r * 3 + c)) & 1).collect())
                .collect();
            let mut span = std::collections::HashSet::new();
            for a in 0..8u32 {
                let v: Vec<u32> = (0..3)
                    .map(|c| (0..3).map(|r| ((a >> r) & 1) * rows[r][c]).sum::<u32>() % 2)
                    .collect();
                span.insert(v);
            }
            assert_eq!(1usize << rank_of_rows(f, &rows, 3), span.len());
        }
    }
}
