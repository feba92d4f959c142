//! Exhaustive walks over F_q^k.
//!
//! [`GrayWalk`] visits every vector of F_q^k so that consecutive vectors
//! differ by `+1 (mod q)` in exactly one coordinate. With the counter
//! `t = sum_i b_i q^i`, the Gray digits are `g_i = b_i - b_{i+1} mod q`;
//! going from `t - 1` to `t` increments exactly `g_j` where `j` is the
//! number of trailing zero base-q digits of `t`. Linear functions of the
//! vector can therefore be maintained with one column update per step.

use crate::algebra::Field;

/// Yields, for each of the `q^k - 1` steps after the all-zero start, the
/// coordinate that is incremented.
#[derive(Debug, Clone)]
pub struct GrayWalk {
    q: u64,
    step: u64,
    total: u64,
}

impl GrayWalk {
    /// `None` when `q^k` overflows `u64`.
    pub fn new(q: u32, k: usize) -> Option<Self> {
        let total = u64::from(q).checked_pow(u32::try_from(k).ok()?)?;
        Some(GrayWalk {
            q: u64::from(q),
            step: 0,
            total,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for GrayWalk {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        self.step += 1;
        if self.step >= self.total {
            return None;
        }
        let mut t = self.step;
        let mut j = 0;
        while t.is_multiple_of(self.q) {
            t /= self.q;
            j += 1;
        }
        Some(j)
    }
}

/// Calls `visit` with every vector of F_q^k in odometer order (last
/// coordinate fastest). Stops early when `visit` returns `false`.
pub fn for_each_vector(q: u32, k: usize, mut visit: impl FnMut(&[u32]) -> bool) {
    let mut v = vec![0u32; k];
    loop {
        if !visit(&v) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
    }
}

/// Walks all combinations `sum_i alpha_i * columns[i]` over F_q, calling
/// `visit(alpha, combination)` for each, starting from the zero vector.
/// `offset` is added to every combination.
pub fn walk_combinations(
    field: Field,
    columns: &[Vec<u32>],
    offset: &[u32],
    mut visit: impl FnMut(&[u32], &[u32]),
) {
    let len = offset.len();
    debug_assert!(columns.iter().all(|c| c.len() == len));
    let q = field.order();
    let mut alpha = vec![0u32; columns.len()];
    let mut current = offset.to_vec();
    visit(&alpha, &current);
    let walk = GrayWalk::new(q, columns.len()).expect("enumeration size fits in u64");
    for j in walk {
        alpha[j] = if alpha[j] + 1 == q { 0 } else { alpha[j] + 1 };
        for (c, &v) in current.iter_mut().zip(&columns[j]) {
            if v != 0 {
                *c = field.add(*c, v);
            }
        }
        visit(&alpha, &current);
    }
}

/// Number of `alpha` in F_q^k with `sum_i alpha_i * columns[i] == 0`,
/// where all columns have length `len`.
pub fn count_zero_combinations(field: Field, columns: &[Vec<u32>], len: usize) -> u64 {
    let q = field.order();
    let mut current = vec![0u32; len];
    let mut nonzero = 0usize;
    let mut count = 1u64;
    let walk = GrayWalk::new(q, columns.len()).expect("enumeration size fits in u64");
    for j in walk {
        for (c, &v) in current.iter_mut().zip(&columns[j]) {
            if v != 0 {
                let before = *c;
                *c = field.add(before, v);
                match (before == 0, *c == 0) {
                    (true, false) => nonzero += 1,
                    (false, true) => nonzero -= 1,
                    _ => {}
                }
            }
        }
        if nonzero == 0 {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gray_walk_visits_every_vector_once() {
        for (q, k) in [(2u32, 4usize), (3, 3), (5, 2), (7, 1), (3, 0)] {
            let mut v = vec![0u32; k];
            let mut seen = HashSet::new();
            seen.insert(v.clone());
            let walk = GrayWalk::new(q, k).unwrap();
            let total = walk.total();
            for j in walk {
                v[j] = (v[j] + 1) % q;
                assert!(seen.insert(v.clone()), "repeat at {v:?}");
            }
            assert_eq!(seen.len() as u64, total);
        }
    }

    #[test]
    fn odometer_order_and_early_exit() {
        let mut seen = Vec::new();
        for_each_vector(2, 2, |v| {
            seen.push(v.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut calls = 0;
        for_each_vector(3, 3, |_| {
            calls += 1;
            calls < 5
        });
        assert_eq!(calls, 5);
        let mut empty = 0;
        for_each_vector(3, 0, |v| {
            assert!(v.is_empty());
            empty += 1;
            true
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn zero_combination_count_is_kernel_size() {
        // columns (1,0), (0,1), (1,1) over F_2: kernel of dimension 1
        let f = Field::new(2).unwrap();
        let cols = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(count_zero_combinations(f, &cols, 2), 2);
        // over F_3, columns (1,2), (2,1): second = 2 * first, kernel size 3
        let f = Field::new(3).unwrap();
        let cols = vec![vec![1, 2], vec![2, 1]];
        assert_eq!(count_zero_combinations(f, &cols, 2), 3);
        let mut brute = 0;
        for_each_vector(3, 2, |a| {
            let v0 = (a[0] + 2 * a[1]) % 3;
            let v1 = (2 * a[0] + a[1]) % 3;
            if v0 == 0 && v1 == 0 {
                brute += 1;
            }
            true
        });
        assert_eq!(brute, 3);
    }

    #[test]
    fn combinations_track_alpha() {
        let f = Field::new(3).unwrap();
        let cols = vec![vec![1, 0, 2], vec![0, 1, 1]];
        walk_combinations(f, &cols, &[0, 0, 1], |alpha, v| {
            for i in 0..3 {
                let expect = (alpha[0] * cols[0][i] + alpha[1] * cols[1][i] + [0, 0, 1][i]) % 3;
                assert_eq!(v[i], expect);
            }
        });
    }
}
