//! Naive reference implementations used as oracles by the integration tests.
#![allow(dead_code)]

use rmtest::algebra::{Polynomial, Ring};

/// A polynomial over F_q as a dense coefficient vector, exponent vector
/// `(a_1, ..., a_n)` stored at `sum a_i q^{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naive {
    pub q: u32,
    pub n: usize,
    pub c: Vec<u32>,
}

pub fn exps_of(q: u32, n: usize, mut idx: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for slot in out.iter_mut() {
        *slot = (idx % q as usize) as u32;
        idx /= q as usize;
    }
    out
}

pub fn index_of(q: u32, exps: &[u32]) -> usize {
    exps.iter()
        .rev()
        .fold(0, |acc, &e| acc * q as usize + e as usize)
}

/// `X^a` with `a >= q` folded by `X^q = X`.
pub fn fold(q: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        (a - 1) % (q - 1) + 1
    }
}

pub fn pow_mod(q: u32, x: u32, e: u32) -> u32 {
    (0..e).fold(1, |acc, _| acc * x % q)
}

impl Naive {
    pub fn zero(q: u32, n: usize) -> Self {
        Naive {
            q,
            n,
            c: vec![0; (q as usize).pow(n as u32)],
        }
    }

    pub fn from_lib(p: &Polynomial) -> Self {
        let ring = p.ring();
        let mut out = Naive::zero(ring.q(), ring.n());
        for (m, c) in p.terms() {
            out.c[index_of(ring.q(), m.exps())] = c;
        }
        out
    }

    pub fn to_lib(&self) -> Polynomial {
        let ring = Ring::new(u64::from(self.q), self.n).unwrap();
        let terms = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (exps_of(self.q, self.n, i), u64::from(c)));
        Polynomial::from_terms(ring, terms).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }

    /// Total degree, `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| exps_of(self.q, self.n, i).iter().sum::<u32>() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn add(&self, other: &Naive) -> Naive {
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| (a + b) % self.q)
            .collect();
        Naive { c, ..*self }
    }

    pub fn scale(&self, s: u32) -> Naive {
        let c = self.c.iter().map(|a| a * s % self.q).collect();
        Naive { c, ..*self }
    }

    pub fn mul(&self, other: &Naive) -> Naive {
        let q = self.q;
        let mut out = Naive::zero(q, self.n);
        let a: Vec<(Vec<u32>, u32)> = self.support();
        let b: Vec<(Vec<u32>, u32)> = other.support();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| fold(q, x + y)).collect();
                let i = index_of(q, &e);
                out.c[i] = (out.c[i] + ca * cb) % q;
            }
        }
        out
    }

    pub fn support(&self) -> Vec<(Vec<u32>, u32)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (exps_of(self.q, self.n, i), c))
            .collect()
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let q = self.q;
        self.support().iter().fold(0, |acc, (e, c)| {
            let term = e
                .iter()
                .zip(x)
                .fold(*c, |t, (&a, &xi)| t * pow_mod(q, xi, a) % q);
            (acc + term) % q
        })
    }

    /// Values at every point, point `x` stored at `index_of(q, x)`.
    pub fn table(&self) -> Vec<u32> {
        (0..self.c.len())
            .map(|i| self.eval(&exps_of(self.q, self.n, i)))
            .collect()
    }
}

/// Every exponent vector of total degree at most `d`.
pub fn monomials_up_to(q: u32, n: usize, d: u32) -> Vec<Vec<u32>> {
    (0..(q as usize).pow(n as u32))
        .map(|i| exps_of(q, n, i))
        .filter(|e| e.iter().sum::<u32>() <= d)
        .collect()
}

/// Every polynomial supported on monomials of degree at most `d`.
pub fn all_up_to(q: u32, n: usize, d: u32) -> Vec<Naive> {
    let mons = monomials_up_to(q, n, d);
    let count = (q as usize).pow(mons.len() as u32);
    (0..count)
        .map(|mut t| {
            let mut p = Naive::zero(q, n);
            for m in &mons {
                p.c[index_of(q, m)] = (t % q as usize) as u32;
                t /= q as usize;
            }
            p
        })
        .collect()
}

/// `|{m' : m' >= m coordinatewise, deg m + s <= deg m' <= deg m + e}|`.
pub fn u_count(q: u32, m: &[u32], s: u32, e: u32) -> u64 {
    let dm: u32 = m.iter().sum();
    (0..(q as usize).pow(m.len() as u32))
        .map(|i| exps_of(q, m.len(), i))
        .filter(|x| x.iter().zip(m).all(|(a, b)| a >= b))
        .filter(|x| {
            let d: u32 = x.iter().sum();
            d >= dm + s && d <= dm + e
        })
        .count() as u64
}

/// Number of reduced monomials in `n` variables of degree at most `d`.
pub fn n_count(q: u32, n: usize, d: u32) -> u64 {
    monomials_up_to(q, n, d).len() as u64
}

/// Graded-lex leading exponent vector: highest degree, then
/// lexicographically largest with `X_1` compared first.
pub fn leading(p: &Naive) -> Vec<u32> {
    p.support()
        .into_iter()
        .map(|(e, _)| e)
        .max_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| a.cmp(b))
        })
        .expect("nonzero")
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
