//! Degree drop under multiplication by a random low-degree polynomial:
//! exact probabilities, the `q^{-|U_{s,e}(LM f)|}` bound, the extremal
//! bound through `m0`, the witness attaining it, and the linear system
//! behind the bound.

use serde::Serialize;

use crate::algebra::{random_polynomial, Monomial, Polynomial, Ring};
use crate::combin::{enumerate_d_range, extremal_monomial, n_q, u_range_size};
use crate::enumerate::count_zero_combinations;
use crate::error::{check_budget, EnumerationSize, Error, Result};
use crate::estimator::{estimate, Budget, Evaluation, ExactProb};
use crate::genbasis::{FieldOrdering, GeneralizedMonomial};
use crate::linalg::Matrix;

/// `f` of exact degree `d`, multiplied by `P` uniform in `P_q(n, e)`;
/// the event is `deg(fP) < d + s`.
#[derive(Debug, Clone)]
pub struct SzQuery {
    pub f: Polynomial,
    pub e: u32,
    pub s: u32,
}

impl SzQuery {
    pub fn new(f: Polynomial, e: u32, s: u32) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if s > e {
            return Err(Error::Parameter(format!("s = {s} exceeds e = {e}")));
        }
        if e > f.ring().max_degree() {
            return Err(Error::Parameter(format!(
                "e = {e} exceeds n(q-1) = {}",
                f.ring().max_degree()
            )));
        }
        Ok(SzQuery { f, e, s })
    }

    pub fn d(&self) -> u32 {
        self.f.degree().finite().expect("nonzero")
    }

    /// `d + s > n(q-1)`: every product has degree below `d + s`.
    pub fn is_vacuous(&self) -> bool {
        self.d() + self.s > self.f.ring().max_degree()
    }

    /// `N_q(n, e)` free coefficients of `P`.
    pub fn multiplier_dimension(&self) -> u64 {
        let r = self.f.ring();
        n_q(r.q(), r.n() as i64, i64::from(self.e)) as u64
    }

    pub fn enumeration_size(&self) -> EnumerationSize {
        EnumerationSize::new(u64::from(self.f.ring().q()), self.multiplier_dimension())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SzMode {
    Exact,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SzBoundReport {
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub e: u32,
    pub s: u32,
    pub leading_monomial: String,
    pub probability: Evaluation,
    /// `|U_{s,e}(LM f)|`
    pub u_lm: u64,
    /// `|U_{s,e}(m0)|`
    pub u_m0: u64,
    /// `q^{-u_lm}`
    pub bound: f64,
    /// `q^{-u_m0}`
    pub extremal_bound: f64,
    /// Exponent `N_q(floor(L/3), e)` of the coarse bound, present when `r >= 3e`.
    pub coarse_exponent: Option<u64>,
    /// Rank of the full vanishing system (exact mode only).
    pub rank: Option<u64>,
    pub vacuous: bool,
    /// Exact comparisons; `None` in sampled mode.
    pub bound_holds: Option<bool>,
    pub extremal_holds: Option<bool>,
    pub coarse_holds: Option<bool>,
    pub equals_extremal: Option<bool>,
}

/// Columns of the linear map `P -> (coefficients of fP at degrees >= d+s)`.
fn drop_columns(f: &Polynomial, e: u32, threshold: u32) -> (Vec<usize>, Vec<Vec<u32>>) {
    let ring = f.ring();
    let degrees = ring.degree_table();
    let rows: Vec<usize> = (0..ring.size())
        .filter(|&i| degrees[i] >= threshold)
        .collect();
    let cols = ring
        .monomials_up_to(i64::from(e))
        .into_iter()
        .map(|m| {
            let prod = f.mul_monomial_index(m);
            rows.iter().map(|&i| prod.coeff_at(i)).collect()
        })
        .collect();
    (rows, cols)
}

/// `Pr[deg(fP) < d + s]` with its bounds.
pub fn degree_drop_probability(
    query: &SzQuery,
    mode: SzMode,
    budget: Budget,
) -> Result<SzBoundReport> {
    let f = &query.f;
    let ring = f.ring();
    let (q, n) = (ring.q(), ring.n());
    let (d, e, s) = (query.d(), query.e, query.s);
    let lm = f.leading_monomial()?;
    let m0 = extremal_monomial(q, n, d)?;
    let u_lm = u_range_size(&lm, s, e, q) as u64;
    let u_m0 = u_range_size(&m0, s, e, q) as u64;
    let r = ring.max_degree() - d;
    let coarse_exponent = (r >= 3 * e).then(|| {
        let l = i64::from(r / (q - 1));
        n_q(q, l / 3, i64::from(e)) as u64
    });
    let vacuous = query.is_vacuous();
    let (probability, rank) = match mode {
        SzMode::Exact => {
            let total = check_budget(query.enumeration_size(), budget.get())?;
            let (rows, cols) = drop_columns(f, e, d + s);
            let count = count_zero_combinations(ring.field(), &cols, rows.len());
            let rank = system_rank(&ring, &cols, rows.len());
            (Evaluation::exact(ExactProb::new(count, total)), Some(rank))
        }
        SzMode::Sampled { trials, seed } => {
            let bound = i64::from(d + s) - 1;
            let est = estimate(
                |rng| {
                    Ok(f.mul_reduced(&random_polynomial(ring, i64::from(e), rng)?)?
                        .has_degree_at_most(bound))
                },
                trials,
                seed,
            )?;
            (Evaluation::sampled(&est), None)
        }
    };
    let exact = probability.exact_prob();
    let qf = f64::from(q);
    Ok(SzBoundReport {
        q,
        n,
        d,
        e,
        s,
        leading_monomial: lm.to_string(),
        u_lm,
        u_m0,
        bound: qf.powi(-(u_lm as i32)),
        extremal_bound: qf.powi(-(u_m0 as i32)),
        coarse_holds: coarse_exponent.and_then(|k| exact.map(|p| p.le_inv_pow(q, k))),
        coarse_exponent,
        rank,
        vacuous,
        bound_holds: exact.map(|p| p.le_inv_pow(q, u_lm)),
        extremal_holds: exact.map(|p| p.le_inv_pow(q, u_m0)),
        equals_extremal: exact.map(|p| p.eq_inv_pow(q, u_m0)),
        probability,
    })
}

fn system_rank(ring: &Ring, cols: &[Vec<u32>], rows: usize) -> u64 {
    let mut m = Matrix::zeros(rows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m.rank(ring.field()) as u64
}

/// `b_{q-1}(X_1) ... b_{q-1}(X_u) b_v(X_{u+1})` with `d = (q-1)u + v`.
pub fn tight_witness(ring: Ring, d: u32, ordering: &FieldOrdering) -> Result<Polynomial> {
    let m0 = extremal_monomial(ring.q(), ring.n(), d)?;
    GeneralizedMonomial {
        indices: m0.exps().to_vec(),
    }
    .to_polynomial(ring, ordering)
}

/// `(q - v) q^{n-u-1}` for `d = (q-1)u + v`, and 1 when `u = n`: the
/// smallest support of a nonzero polynomial of degree at most `d`.
pub fn min_support_bound(q: u32, n: usize, d: u32) -> u64 {
    let (u, v) = ((d / (q - 1)) as usize, d % (q - 1));
    if u >= n {
        return 1;
    }
    u64::from(q - v) * u64::from(q).pow((n - u - 1) as u32)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessReport {
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub e: u32,
    pub s: u32,
    pub probability: ExactProb,
    pub u_m0: u64,
    pub equal: bool,
}

/// Checks `Pr[deg(fP) < d + s] = q^{-|U_{s,e}(m0)|}` for the witness.
pub fn verify_tightness(
    ring: Ring,
    d: u32,
    e: u32,
    s: u32,
    ordering: &FieldOrdering,
    budget: Budget,
) -> Result<TightnessReport> {
    let f = tight_witness(ring, d, ordering)?;
    let rep = degree_drop_probability(&SzQuery::new(f, e, s)?, SzMode::Exact, budget)?;
    let p = rep.probability.exact_prob().expect("exact mode");
    Ok(TightnessReport {
        q: ring.q(),
        n: ring.n(),
        d,
        e,
        s,
        probability: p,
        u_m0: rep.u_m0,
        equal: p.eq_inv_pow(ring.q(), rep.u_m0),
    })
}

/// The coefficient matrix of the equations "coefficient of `m * m1` in
/// `fP` vanishes" for `m` in `D_{s,e}(m1)`, `m1 = LM(f)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquationRank {
    /// `|D_{s,e}(LM f)|`, the number of rows.
    pub rows: u64,
    /// Number of columns, the monomials of degree at most `e`.
    pub columns: u64,
    /// Rank of the rows.
    pub rank: u64,
    /// Rank of the square block on the columns in `D_{s,e}(LM f)`.
    pub restricted_rank: u64,
    /// The square block is upper triangular with nonzero diagonal when
    /// rows and columns are both sorted increasingly by `m`.
    pub triangular: bool,
    /// Rank of the complete system over every monomial of degree at least `d + s`.
    pub system_rank: u64,
}

pub fn independent_equation_rank(f: &Polynomial, e: u32, s: u32) -> Result<EquationRank> {
    let query = SzQuery::new(f.clone(), e, s)?;
    let ring = f.ring();
    let q = ring.q();
    let field = ring.field();
    let m1 = f.leading_monomial()?;
    let dset: Vec<Monomial> = enumerate_d_range(&m1, s, e, q)?
        .members
        .into_iter()
        .collect();
    let col_idx = ring.monomials_up_to(i64::from(e));
    let col_mono: Vec<Monomial> = col_idx.iter().map(|&i| ring.monomial(i)).collect();
    let products: Vec<Polynomial> = col_idx.iter().map(|&i| f.mul_monomial_index(i)).collect();
    let mut b = Matrix::zeros(dset.len(), col_idx.len());
    for (r, m) in dset.iter().enumerate() {
        // m is disjoint from m1, so the unreduced product is already reduced
        let tilde = m.unreduced_mul(&m1);
        let t = ring.monomial_index(&tilde)?;
        for (c, p) in products.iter().enumerate() {
            b.set(r, c, p.coeff_at(t));
        }
    }
    let square_cols: Vec<usize> = dset
        .iter()
        .map(|m| {
            col_mono
                .iter()
                .position(|x| x == m)
                .expect("D_{s,e} lies within degree e")
        })
        .collect();
    let mut square = Matrix::zeros(dset.len(), dset.len());
    for r in 0..dset.len() {
        for (c, &src) in square_cols.iter().enumerate() {
            square.set(r, c, b.get(r, src));
        }
    }
    // rows and columns are both in increasing graded-lex order of m
    let triangular =
        (0..dset.len()).all(|r| square.get(r, r) != 0 && (0..r).all(|c| square.get(r, c) == 0));
    let (rows, cols) = drop_columns(f, e, query.d() + s);
    Ok(EquationRank {
        rows: dset.len() as u64,
        columns: col_idx.len() as u64,
        rank: b.rank(field) as u64,
        restricted_rank: square.rank(field) as u64,
        triangular,
        system_rank: system_rank(&ring, &cols, rows.len()),
    })
}
