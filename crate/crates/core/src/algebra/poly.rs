//! Dense polynomials of P_q(n) and their value tables.

use std::ops::{Add, Neg, Sub};

use super::field::FieldElement;
use super::monomial::{reduce_exponent, Monomial};
use super::ring::Ring;
use super::transform::{apply_all_axes, LineTransform};
use crate::error::{Error, Result};

/// Total degree, with the zero polynomial at `NegInfinity` so that any
/// bound `deg(g) < t` holds for `g = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    /// `self < bound`.
    pub fn is_below(self, bound: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => i64::from(d) < bound,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// An element of P_q(n) stored as a dense coefficient table indexed by
/// the mixed-radix encoding of exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    coeffs: Vec<u32>,
}

/// Values of a function `F_q^n -> F_q` at every point, in mixed-radix
/// point order with `x_1` most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvalTable {
    ring: Ring,
    values: Vec<u32>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            coeffs: vec![0; ring.size()],
        }
    }

    pub fn constant(ring: Ring, c: u64) -> Self {
        let mut p = Self::zero(ring);
        p.coeffs[0] = ring.field().reduce(c);
        p
    }

    pub fn monomial(ring: Ring, m: &Monomial, c: u64) -> Result<Self> {
        let mut p = Self::zero(ring);
        p.coeffs[ring.monomial_index(m)?] = ring.field().reduce(c);
        Ok(p)
    }

    /// `X_{i+1}` for 0-based `i`.
    pub fn var(ring: Ring, i: usize) -> Result<Self> {
        if i >= ring.n() {
            return Err(Error::Parameter(format!("variable index {i} out of range")));
        }
        Self::monomial(ring, &Monomial::var(ring.n(), i), 1)
    }

    /// Builds from a full coefficient table; entries are reduced mod q.
    pub fn from_coeffs(ring: Ring, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != ring.size() {
            return Err(Error::Shape {
                expected: ring.size(),
                actual: coeffs.len(),
            });
        }
        let f = ring.field();
        let coeffs = coeffs.into_iter().map(|c| f.reduce(u64::from(c))).collect();
        Ok(Polynomial { ring, coeffs })
    }

    /// Sums `c * X^e` over the given terms. Exponents `>= q` are reduced by
    /// `X^q = X`; repeated monomials accumulate.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        let f = ring.field();
        let mut p = Self::zero(ring);
        for (mut exps, c) in terms {
            if exps.len() != ring.n() {
                return Err(Error::Shape {
                    expected: ring.n(),
                    actual: exps.len(),
                });
            }
            for e in &mut exps {
                *e = reduce_exponent(*e, ring.q());
            }
            let idx = ring.index_of(&exps);
            p.coeffs[idx] = f.add(p.coeffs[idx], f.reduce(c));
        }
        Ok(p)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> Result<FieldElement> {
        let idx = self.ring.monomial_index(m)?;
        Ok(self.ring.field().element(u64::from(self.coeffs[idx])))
    }

    pub fn coeff_at(&self, idx: usize) -> u32 {
        self.coeffs[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Nonzero terms in decreasing graded-lex order.
    pub fn terms(&self) -> Vec<(Monomial, u32)> {
        let mut terms: Vec<(Monomial, u32)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.ring.monomial(i), c))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        terms
    }

    pub fn degree(&self) -> Degree {
        let q = self.ring.q() as usize;
        let mut best: Option<u32> = None;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut i = idx;
            let mut deg = 0u32;
            while i > 0 {
                deg += (i % q) as u32;
                i /= q;
            }
            best = Some(best.map_or(deg, |b| b.max(deg)));
        }
        best.map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Membership in P_q(n, d); the zero polynomial belongs for every `d`,
    /// and negative `d` admits only zero.
    pub fn has_degree_at_most(&self, d: i64) -> bool {
        self.degree().is_below(d + 1)
    }

    /// The graded-lex largest monomial with nonzero coefficient.
    pub fn leading_monomial(&self) -> Result<Monomial> {
        let q = self.ring.q() as usize;
        let mut best: Option<(u32, usize)> = None;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut i = idx;
            let mut deg = 0u32;
            while i > 0 {
                deg += (i % q) as u32;
                i /= q;
            }
            // Within one degree a larger mixed-radix index is lexicographically
            // larger, since X_1 is the most significant digit.
            if best.is_none_or(|b| (deg, idx) > b) {
                best = Some((deg, idx));
            }
        }
        best.map(|(_, idx)| self.ring.monomial(idx))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = f.reduce(u64::from(c));
        Polynomial {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        let f = self.ring.field();
        Ok(Polynomial {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        let f = self.ring.field();
        Ok(Polynomial {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    /// Product in P_q(n), i.e. with every `X_i^q` replaced by `X_i`.
    ///
    /// Sparse operands are multiplied term by term; dense ones go through
    /// value tables, where the product is pointwise.
    pub fn mul_reduced(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        let a = self.num_terms();
        let b = other.num_terms();
        let ring = self.ring;
        let transform_cost = 3 * ring.size() * ring.n().max(1) * ring.q() as usize;
        if a.saturating_mul(b).saturating_mul(ring.n().max(1)) <= transform_cost {
            Ok(self.mul_termwise(other))
        } else {
            Ok(self.mul_pointwise(other))
        }
    }

    pub(crate) fn mul_termwise(&self, other: &Polynomial) -> Polynomial {
        let ring = self.ring;
        let f = ring.field();
        let q = ring.q();
        let n = ring.n();
        let lhs: Vec<(Vec<u32>, u32)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (ring.digits(i), c))
            .collect();
        let rhs: Vec<(Vec<u32>, u32)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (ring.digits(i), c))
            .collect();
        let mut out = vec![0u32; ring.size()];
        let qs = q as usize;
        for (da, ca) in &lhs {
            for (db, cb) in &rhs {
                let mut idx = 0usize;
                for k in 0..n {
                    idx = idx * qs + reduce_exponent(da[k] + db[k], q) as usize;
                }
                out[idx] = f.add(out[idx], f.mul(*ca, *cb));
            }
        }
        Polynomial { ring, coeffs: out }
    }

    pub(crate) fn mul_pointwise(&self, other: &Polynomial) -> Polynomial {
        let f = self.ring.field();
        let mut a = self.evaluate_all();
        let b = other.evaluate_all();
        for (x, y) in a.values.iter_mut().zip(&b.values) {
            *x = f.mul(*x, *y);
        }
        interpolate(&a)
    }

    /// Multiplies by the monomial with index `m` (reduced product).
    pub fn mul_monomial_index(&self, m: usize) -> Polynomial {
        let ring = self.ring;
        let q = ring.q();
        let qs = q as usize;
        let md = ring.digits(m);
        let mut out = vec![0u32; ring.size()];
        let mut digits = vec![0u32; ring.n()];
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            ring.digits_into(idx, &mut digits);
            let mut t = 0usize;
            for (d, e) in digits.iter().zip(&md) {
                t = t * qs + reduce_exponent(d + e, q) as usize;
            }
            out[t] = ring.field().add(out[t], c);
        }
        Polynomial { ring, coeffs: out }
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.ring.n() {
            return Err(Error::Shape {
                expected: self.ring.n(),
                actual: point.len(),
            });
        }
        let f = self.ring.field();
        let mut acc = 0u32;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut term = c;
            for (e, &x) in self.ring.digits(idx).iter().zip(point) {
                term = f.mul(term, f.pow(f.reduce(u64::from(x)), u64::from(*e)));
            }
            acc = f.add(acc, term);
        }
        Ok(acc)
    }

    /// Values at every point of F_q^n.
    pub fn evaluate_all(&self) -> EvalTable {
        let mut values = self.coeffs.clone();
        apply_all_axes(
            &self.ring,
            &mut values,
            &LineTransform::evaluate(self.ring.field()),
        );
        EvalTable {
            ring: self.ring,
            values,
        }
    }

    /// `|Supp(f)|`: the number of points where `f` is nonzero.
    pub fn support_size(&self) -> usize {
        self.evaluate_all().weight()
    }
}

/// The unique polynomial of P_q(n) with the given values.
pub fn interpolate(table: &EvalTable) -> Polynomial {
    let mut coeffs = table.values.clone();
    apply_all_axes(
        &table.ring,
        &mut coeffs,
        &LineTransform::interpolate(table.ring.field()),
    );
    Polynomial {
        ring: table.ring,
        coeffs,
    }
}

pub fn evaluate_all(f: &Polynomial) -> EvalTable {
    f.evaluate_all()
}

/// Product in P_q(n).
pub fn mul_reduced(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.mul_reduced(g)
}

/// Leading monomial under the graded-lex order.
pub fn leading_monomial(f: &Polynomial) -> Result<Monomial> {
    f.leading_monomial()
}

impl EvalTable {
    pub fn new(ring: Ring, values: Vec<u32>) -> Result<Self> {
        if values.len() != ring.size() {
            return Err(Error::Shape {
                expected: ring.size(),
                actual: values.len(),
            });
        }
        let f = ring.field();
        let values = values.into_iter().map(|v| f.reduce(u64::from(v))).collect();
        Ok(EvalTable { ring, values })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value_at(&self, point: &[u32]) -> u32 {
        self.values[self.ring.index_of(point)]
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    /// Number of points where the two tables differ.
    pub fn hamming_distance(&self, other: &EvalTable) -> Result<usize> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub fn pointwise_mul(&self, other: &EvalTable) -> Result<EvalTable> {
        self.ring.ensure_same(&other.ring)?;
        let f = self.ring.field();
        Ok(EvalTable {
            ring: self.ring,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f.mul(a, b))
                .collect(),
        })
    }

    pub fn interpolate(&self) -> Polynomial {
        interpolate(self)
    }
}

/// Uniform element of P_q(n, e): every coefficient of degree at most `e`
/// is drawn independently from F_q, in increasing index order.
pub fn random_polynomial<R: rand::Rng + ?Sized>(
    ring: Ring,
    e: i64,
    rng: &mut R,
) -> Result<Polynomial> {
    if e < 0 || e > i64::from(ring.max_degree()) {
        return Err(Error::Parameter(format!(
            "degree bound {e} outside 0..={}",
            ring.max_degree()
        )));
    }
    let degrees = ring.degree_table();
    Ok(random_from_support(ring, &degrees, e as u32, rng))
}

fn random_from_support<R: rand::Rng + ?Sized>(
    ring: Ring,
    degrees: &[u32],
    e: u32,
    rng: &mut R,
) -> Polynomial {
    let q = ring.q();
    let coeffs = degrees
        .iter()
        .map(|&d| if d <= e { rng.gen_range(0..q) } else { 0 })
        .collect();
    Polynomial { ring, coeffs }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect(),
        }
    }
}
