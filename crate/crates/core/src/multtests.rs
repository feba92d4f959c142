//! Multiplication-based membership tests: `Test_{e,k}`, `Corr-h`, the
//! robust-distance experiment and the affine-subspace restriction test,
//! with exact enumeration oracles and the accompanying bounds.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{random_polynomial, EvalTable, Field, Polynomial, Ring};
use crate::combin::n_q;
use crate::enumerate::{count_zero_combinations, for_each_vector, walk_combinations};
use crate::error::{check_budget, EnumerationSize, Error, Result};
use crate::estimator::{estimate, Budget, EstimateResult, ExactProb};
use crate::linalg::Matrix;
use crate::rmcode::{character_membership, distance, root_of_unity, CharacterMode, CodeParams};

/// `Test_{e,k}` against the code `P_q(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TestConfig {
    pub code: CodeParams,
    pub e: u32,
    pub k: u32,
}

impl TestConfig {
    pub fn new(code: CodeParams, e: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("k must be at least 1".into()));
        }
        let top = (code.q - 1) * code.n as u32;
        if e > top {
            return Err(Error::Parameter(format!("e = {e} exceeds n(q-1) = {top}")));
        }
        Ok(TestConfig { code, e, k })
    }

    /// `d + e k`, the order the product is tested against.
    pub fn target(&self) -> u64 {
        u64::from(self.code.d) + u64::from(self.e) * u64::from(self.k)
    }

    /// `d + e k > n(q-1)`: every product is accepted.
    pub fn is_vacuous(&self) -> bool {
        self.target() > u64::from((self.code.q - 1) * self.code.n as u32)
    }

    /// `N_q(n, e)`.
    pub fn multiplier_dimension(&self) -> u64 {
        n_q(self.code.q, self.code.n as i64, i64::from(self.e)) as u64
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        let r = f.ring();
        if r.q() != self.code.q || r.n() != self.code.n {
            return Err(Error::ParameterMismatch {
                left: r.to_string(),
                right: format!("q={} n={}", self.code.q, self.code.n),
            });
        }
        Ok(())
    }
}

/// One run of `Test_{e,k}`.
pub fn test_e_k<R: Rng + ?Sized>(f: &Polynomial, cfg: &TestConfig, rng: &mut R) -> Result<bool> {
    cfg.check(f)?;
    let ring = f.ring();
    let mut g = f.clone();
    for _ in 0..cfg.k {
        let p = random_polynomial(ring, i64::from(cfg.e), rng)?;
        g = g.mul_reduced(&p)?;
    }
    Ok(g.has_degree_at_most(cfg.target() as i64))
}

/// Columns of `P -> (coefficients of gP above degree t)` for `P` of degree
/// at most `e`, and the number of rows.
fn excess_columns(g: &Polynomial, e: u32, t: u64) -> (usize, Vec<Vec<u32>>) {
    let ring = g.ring();
    let degrees = ring.degree_table();
    let rows: Vec<usize> = (0..ring.size())
        .filter(|&i| u64::from(degrees[i]) > t)
        .collect();
    let cols = ring
        .monomials_up_to(i64::from(e))
        .into_iter()
        .map(|m| {
            let prod = g.mul_monomial_index(m);
            rows.iter().map(|&i| prod.coeff_at(i)).collect()
        })
        .collect();
    (rows.len(), cols)
}

/// Every polynomial of degree at most `e`, in Gray order.
fn all_multipliers(ring: Ring, e: u32) -> Vec<Polynomial> {
    let idx = ring.monomials_up_to(i64::from(e));
    let cols: Vec<Vec<u32>> = idx
        .iter()
        .map(|&i| {
            let mut c = vec![0u32; ring.size()];
            c[i] = 1;
            c
        })
        .collect();
    let mut out = Vec::new();
    walk_combinations(ring.field(), &cols, &vec![0u32; ring.size()], |_, c| {
        out.push(Polynomial::from_coeffs(ring, c.to_vec()).expect("reduced coefficients"));
    });
    out
}

/// Exact `Pr[f P_1 ... P_k in P_q(n, d + ek)]`. The first `k - 1`
/// multipliers are enumerated with their partial products; for the last
/// one the event is linear, and its solutions are counted by a Gray walk.
pub fn exact_acceptance_probability(
    f: &Polynomial,
    cfg: &TestConfig,
    budget: Budget,
) -> Result<ExactProb> {
    cfg.check(f)?;
    let q = u64::from(cfg.code.q);
    let dim = cfg.multiplier_dimension();
    let total = check_budget(
        EnumerationSize::new(q, dim * u64::from(cfg.k)),
        budget.get(),
    )?;
    let ring = f.ring();
    let multipliers = if cfg.k > 1 {
        all_multipliers(ring, cfg.e)
    } else {
        Vec::new()
    };
    fn rec(
        g: &Polynomial,
        depth: u32,
        cfg: &TestConfig,
        multipliers: &[Polynomial],
    ) -> Result<u64> {
        if depth == 1 {
            let (rows, cols) = excess_columns(g, cfg.e, cfg.target());
            return Ok(count_zero_combinations(g.ring().field(), &cols, rows));
        }
        let mut acc = 0u64;
        for p in multipliers {
            acc += rec(&g.mul_reduced(p)?, depth - 1, cfg, multipliers)?;
        }
        Ok(acc)
    }
    let count = rec(f, cfg.k, cfg, &multipliers)?;
    Ok(ExactProb::new(count, total))
}

/// Monte Carlo estimate of the acceptance probability.
pub fn sampled_acceptance(
    f: &Polynomial,
    cfg: &TestConfig,
    trials: u64,
    seed: u64,
) -> Result<EstimateResult> {
    cfg.check(f)?;
    estimate(|rng| test_e_k(f, cfg, rng), trials, seed)
}

/// The two readings of the exponent in `eta(q, k)`.
pub const ETA_READING: &str = "eta(q,k) = 1/(q^(k/(q-1)) ln q), exponent read as k/(q-1)";

/// `eta(q, k) = 1 / (q^{k/(q-1)} ln q)`.
pub fn eta(q: u32, k: u32) -> f64 {
    let qf = f64::from(q);
    1.0 / (qf.powf(f64::from(k) / (qf - 1.0)) * qf.ln())
}

/// Default for the nonconstructive constant `c_q`.
pub const DEFAULT_CQ: i64 = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundParams {
    pub eta: f64,
    pub c_q: i64,
    /// `L = floor(log_q Delta)`
    pub l: u32,
    /// `floor(L/10) - c_q`
    pub inner_n: i64,
    /// `N_q(floor(L/10) - c_q, e)`
    pub n_q: u64,
    /// `k q^{-eta N_q(...)}`
    pub bound: f64,
    pub vacuous: bool,
    /// Whether `Delta <= q^{r/(4(q-1)) - 2}` and `e <= r/(4k)`.
    pub premise_holds: bool,
    pub eta_reading: &'static str,
}

/// `floor(log_q delta)` for `delta >= 1`.
pub fn floor_log(q: u32, delta: u64) -> u32 {
    let mut l = 0;
    let mut p = u64::from(q);
    while p <= delta {
        l += 1;
        match p.checked_mul(u64::from(q)) {
            Some(next) => p = next,
            None => break,
        }
    }
    l
}

/// The soundness bound `k q^{-eta(q,k) N_q(floor(L/10) - c_q, e)}`.
pub fn soundness_bound(cfg: &TestConfig, delta: u64, c_q: i64) -> Result<BoundParams> {
    if delta == 0 {
        return Err(Error::Parameter("Delta must be at least 1".into()));
    }
    let q = cfg.code.q;
    let l = floor_log(q, delta);
    let inner_n = i64::from(l / 10) - c_q;
    let nq = n_q(q, inner_n, i64::from(cfg.e)) as u64;
    let et = eta(q, cfg.k);
    let bound = f64::from(cfg.k) * f64::from(q).powf(-et * nq as f64);
    let r = f64::from(cfg.code.r());
    let premise_holds = (delta as f64).log(f64::from(q)) <= r / (4.0 * f64::from(q - 1)) - 2.0
        && f64::from(cfg.e) <= r / (4.0 * f64::from(cfg.k));
    Ok(BoundParams {
        eta: et,
        c_q,
        l,
        inner_n,
        n_q: nq,
        bound,
        vacuous: bound >= 1.0,
        premise_holds,
        eta_reading: ETA_READING,
    })
}

/// Exponent `N_q(L, e)` of the bound `k q^{-N_q(L,e)}` for `f` of exact
/// degree above `d`, with `L = floor(log_q Delta)`.
pub fn exact_degree_exponent(cfg: &TestConfig, delta: u64) -> u64 {
    n_q(
        cfg.code.q,
        i64::from(floor_log(cfg.code.q, delta)),
        i64::from(cfg.e),
    ) as u64
}

/// A univariate polynomial `c_0 + c_1 t + ... + c_k t^k` with `c_k != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnivariatePoly {
    #[serde(skip)]
    field: Field,
    coeffs: Vec<u32>,
}

impl UnivariatePoly {
    /// Coefficients from the constant term up; trailing zeros are dropped.
    pub fn new(field: Field, coeffs: &[u64]) -> Result<Self> {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| field.reduce(x)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        if c.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(UnivariatePoly { field, coeffs: c })
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn leading(&self) -> u32 {
        *self.coeffs.last().expect("nonzero")
    }

    pub fn eval(&self, t: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, t), c))
    }

    /// `h(P)` in the quotient ring by Horner's rule.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let ring = p.ring();
        let mut acc = Polynomial::zero(ring);
        for &c in self.coeffs.iter().rev() {
            acc = &acc.mul_reduced(p)? + &Polynomial::constant(ring, u64::from(c));
        }
        Ok(acc)
    }
}

fn check_h(h: &UnivariatePoly, cfg: &TestConfig) -> Result<()> {
    if h.field.order() != cfg.code.q {
        return Err(Error::Parameter("h is over a different field".into()));
    }
    if h.degree() >= cfg.code.q {
        return Err(Error::Parameter(format!(
            "deg h = {} must be below q = {}, otherwise h(P) can vanish identically",
            h.degree(),
            cfg.code.q
        )));
    }
    if h.degree() != cfg.k {
        return Err(Error::Parameter(format!(
            "deg h = {} differs from k = {}",
            h.degree(),
            cfg.k
        )));
    }
    Ok(())
}

/// One run of `Corr-h`: accept iff `f h(P) in P_q(n, d + ek)`.
pub fn corr_h<R: Rng + ?Sized>(
    f: &Polynomial,
    cfg: &TestConfig,
    h: &UnivariatePoly,
    rng: &mut R,
) -> Result<bool> {
    cfg.check(f)?;
    check_h(h, cfg)?;
    let p = random_polynomial(f.ring(), i64::from(cfg.e), rng)?;
    Ok(f.mul_reduced(&h.apply(&p)?)?
        .has_degree_at_most(cfg.target() as i64))
}

pub fn exact_corr_h(
    f: &Polynomial,
    cfg: &TestConfig,
    h: &UnivariatePoly,
    budget: Budget,
) -> Result<ExactProb> {
    cfg.check(f)?;
    check_h(h, cfg)?;
    let total = check_budget(
        EnumerationSize::new(u64::from(cfg.code.q), cfg.multiplier_dimension()),
        budget.get(),
    )?;
    let mut count = 0;
    for p in all_multipliers(f.ring(), cfg.e) {
        if f.mul_reduced(&h.apply(&p)?)?
            .has_degree_at_most(cfg.target() as i64)
        {
            count += 1;
        }
    }
    Ok(ExactProb::new(count, total))
}

pub fn sampled_corr_h(
    f: &Polynomial,
    cfg: &TestConfig,
    h: &UnivariatePoly,
    trials: u64,
    seed: u64,
) -> Result<EstimateResult> {
    cfg.check(f)?;
    check_h(h, cfg)?;
    estimate(|rng| corr_h(f, cfg, h, rng), trials, seed)
}

/// `a <= b^{1/2^k}` for exact probabilities, i.e. `a^{2^k} <= b`.
pub fn le_root(a: ExactProb, b: ExactProb, k: u32) -> bool {
    let e = 1u32 << k;
    BigUint::from(a.count).pow(e) * BigUint::from(b.total)
        <= BigUint::from(b.count) * BigUint::from(a.total).pow(e)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrConsistency {
    pub corr_h: ExactProb,
    pub test_e_k: ExactProb,
    /// `corr_h <= test_e_k^{1/2^k}`
    pub holds: bool,
}

pub fn corr_h_consistency(
    f: &Polynomial,
    cfg: &TestConfig,
    h: &UnivariatePoly,
    budget: Budget,
) -> Result<CorrConsistency> {
    let a = exact_corr_h(f, cfg, h, budget)?;
    let b = exact_acceptance_probability(f, cfg, budget)?;
    Ok(CorrConsistency {
        corr_h: a,
        test_e_k: b,
        holds: le_root(a, b, cfg.k),
    })
}

/// `<g, f> = sum_x g(x) f(x)` from value tables.
fn table_inner(field: Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// `avg_{P in P_q(n, e)} omega^{<g(P), f>}`.
pub fn character_primitive(
    f: &Polynomial,
    g: &UnivariatePoly,
    e: u32,
    budget: Budget,
) -> Result<Complex64> {
    let ring = f.ring();
    let q = ring.q();
    let dim = n_q(q, ring.n() as i64, i64::from(e)) as u64;
    let total = check_budget(EnumerationSize::new(u64::from(q), dim), budget.get())?;
    let field = ring.field();
    let ft = f.evaluate_all();
    let mut sum = Complex64::new(0.0, 0.0);
    for p in all_multipliers(ring, e) {
        let gp: Vec<u32> = p
            .evaluate_all()
            .values()
            .iter()
            .map(|&v| g.eval(v))
            .collect();
        sum += root_of_unity(q, table_inner(field, &gp, ft.values()));
    }
    Ok(sum / total as f64)
}

/// `avg_{P, Q} omega^{<f h(P), Q>}` with `Q` over the dual of
/// `P_q(n, d + ek)`; equals the `Corr-h` acceptance probability.
pub fn character_average(
    f: &Polynomial,
    cfg: &TestConfig,
    h: &UnivariatePoly,
    budget: Budget,
) -> Result<Complex64> {
    cfg.check(f)?;
    check_h(h, cfg)?;
    let ring = f.ring();
    let top = ring.max_degree();
    if cfg.is_vacuous() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let code = CodeParams::for_ring(&ring, cfg.target().min(u64::from(top)) as u32)?;
    let multipliers = all_multipliers(ring, cfg.e);
    let mut sum = Complex64::new(0.0, 0.0);
    for p in &multipliers {
        let g = f.mul_reduced(&h.apply(p)?)?;
        sum += character_membership(&g, &code, CharacterMode::Exact, budget.get())?.value();
    }
    Ok(sum / multipliers.len() as f64)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SquaringReport {
    pub q: u32,
    pub n: usize,
    pub e: u32,
    /// (f, a, b) triples checked for the degree-1 identity
    pub base_cases: u64,
    pub max_base_error: f64,
    /// (f, g) pairs checked for the degree-2 inequality
    pub k2_cases: u64,
    /// Largest `|avg omega^{<g(P), f>}|^4 - Re avg omega^{<2 g_2 P_1 P_2, f>}`.
    pub max_k2_excess: f64,
    pub k2_violations: u64,
}

impl SquaringReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_base_error <= tol && self.k2_violations == 0
    }
}

/// For every `f` in `P_q(n)`, checks
/// `|avg_P omega^{<aP + b, f>}|^2 = avg_P omega^{<aP, f>}` for all
/// `a != 0`, `b`, and
/// `|avg_P omega^{<g(P), f>}|^4 <= Re avg_{P1,P2} omega^{<2 g_2 P1 P2, f>}`
/// for every `g` of degree exactly 2.
pub fn squaring_trick_sweep(
    ring: Ring,
    e: u32,
    tol: f64,
    budget: Budget,
) -> Result<SquaringReport> {
    let q = ring.q();
    let field = ring.field();
    let points = ring.size();
    let f_count = EnumerationSize::new(u64::from(q), points as u64);
    let dim = n_q(q, ring.n() as i64, i64::from(e)) as u64;
    let per_f = EnumerationSize::new(u64::from(q), 2 * dim);
    let work = f_count
        .checked()
        .and_then(|a| per_f.checked().and_then(|b| a.checked_mul(b)))
        .ok_or(Error::Infeasible {
            required: f_count,
            budget: budget.get(),
        })?;
    if work > budget.get().saturating_mul(64) {
        return Err(Error::Infeasible {
            required: EnumerationSize::new(work, 1),
            budget: budget.get(),
        });
    }
    let tables: Vec<Vec<u32>> = all_multipliers(ring, e)
        .iter()
        .map(|p| p.evaluate_all().values().to_vec())
        .collect();
    let m = tables.len() as f64;
    let roots: Vec<Complex64> = (0..q).map(|a| root_of_unity(q, a)).collect();
    let mut rep = SquaringReport {
        q,
        n: ring.n(),
        e,
        ..Default::default()
    };
    // 1, P and P^2 paired with f, per multiplier
    let mut lin = vec![0u32; tables.len()];
    let mut sq = vec![0u32; tables.len()];
    for_each_vector(q, points, |f| {
        let ones = f.iter().fold(0, |acc, &v| field.add(acc, v));
        for (i, t) in tables.iter().enumerate() {
            lin[i] = table_inner(field, t, f);
            sq[i] = t.iter().zip(f).fold(0, |acc, (&p, &v)| {
                field.add(acc, field.mul(field.mul(p, p), v))
            });
        }
        for a in 1..q {
            let rhs: Complex64 = lin
                .iter()
                .map(|&l| roots[field.mul(a, l) as usize])
                .sum::<Complex64>()
                / m;
            for b in 0..q {
                let avg: Complex64 = lin
                    .iter()
                    .map(|&l| roots[field.add(field.mul(a, l), field.mul(b, ones)) as usize])
                    .sum::<Complex64>()
                    / m;
                let err = (Complex64::new(avg.norm_sqr(), 0.0) - rhs).norm();
                rep.max_base_error = rep.max_base_error.max(err);
                rep.base_cases += 1;
            }
        }
        // <P_i P_j, f> for all pairs
        let mut pair = vec![0u32; tables.len() * tables.len()];
        for (i, ti) in tables.iter().enumerate() {
            for (j, tj) in tables.iter().enumerate().skip(i) {
                let v = (0..points).fold(0, |acc, x| {
                    field.add(acc, field.mul(field.mul(ti[x], tj[x]), f[x]))
                });
                pair[i * tables.len() + j] = v;
                pair[j * tables.len() + i] = v;
            }
        }
        for g2 in 1..q {
            let scale = field.mul(field.reduce(2), g2);
            let rhs: f64 = pair
                .iter()
                .map(|&v| roots[field.mul(scale, v) as usize].re)
                .sum::<f64>()
                / (m * m);
            for g1 in 0..q {
                for g0 in 0..q {
                    let avg: Complex64 = (0..tables.len())
                        .map(|i| {
                            let v = field.add(
                                field.add(field.mul(g2, sq[i]), field.mul(g1, lin[i])),
                                field.mul(g0, ones),
                            );
                            roots[v as usize]
                        })
                        .sum::<Complex64>()
                        / m;
                    let lhs = avg.norm_sqr() * avg.norm_sqr();
                    rep.k2_cases += 1;
                    rep.max_k2_excess = rep.max_k2_excess.max(lhs - rhs);
                    if lhs > rhs + tol {
                        rep.k2_violations += 1;
                    }
                }
            }
        }
        true
    });
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustSummary {
    pub mode: crate::estimator::Mode,
    pub samples: u64,
    /// distance -> number of multipliers
    pub histogram: BTreeMap<u64, u64>,
    pub min: u64,
    pub median: u64,
    /// `at_most[t]` = fraction of samples with distance at most `t`
    pub at_most: Vec<f64>,
}

/// Distance of `f P` to `P_q(n, d + e)` over all multipliers (`trials =
/// None`) or over seeded samples.
pub fn robust_distance_experiment(
    f: &Polynomial,
    cfg: &TestConfig,
    trials: Option<(u64, u64)>,
    budget: Budget,
) -> Result<RobustSummary> {
    cfg.check(f)?;
    if cfg.k != 1 {
        return Err(Error::Parameter("the robust experiment uses k = 1".into()));
    }
    let ring = f.ring();
    let order = cfg.target().min(u64::from(ring.max_degree())) as u32;
    let code = CodeParams::for_ring(&ring, order)?;
    let dist = |p: &Polynomial| -> Result<u64> {
        Ok(distance(&f.mul_reduced(p)?, &code, budget.get())?.distance)
    };
    let (mode, values): (_, Vec<u64>) = match trials {
        None => {
            check_budget(
                EnumerationSize::new(u64::from(ring.q()), cfg.multiplier_dimension()),
                budget.get(),
            )?;
            let v = all_multipliers(ring, cfg.e)
                .iter()
                .map(dist)
                .collect::<Result<_>>()?;
            (crate::estimator::Mode::Exact, v)
        }
        Some((t, seed)) => {
            let v = (0..t)
                .map(|i| {
                    dist(&random_polynomial(
                        ring,
                        i64::from(cfg.e),
                        &mut crate::estimator::stream_rng(seed, i),
                    )?)
                })
                .collect::<Result<_>>()?;
            (crate::estimator::Mode::Sampled, v)
        }
    };
    let mut histogram = BTreeMap::new();
    for &v in &values {
        *histogram.entry(v).or_insert(0u64) += 1;
    }
    let mut sorted = values.clone();
    sorted.sort_unstable();
    let n = values.len() as u64;
    let max = *sorted.last().unwrap_or(&0);
    let at_most = (0..=max)
        .map(|t| sorted.iter().filter(|&&v| v <= t).count() as f64 / n as f64)
        .collect();
    Ok(RobustSummary {
        mode,
        samples: n,
        min: *sorted.first().unwrap_or(&0),
        median: sorted
            .get(sorted.len().saturating_sub(1) / 2)
            .copied()
            .unwrap_or(0),
        histogram,
        at_most,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionCheck {
    pub delta_prime: u64,
    /// `Pr_P[dist(fP, P_q(n, d+e)) <= Delta']`
    pub lucky: ExactProb,
    /// `Pr_{P,P'}[f P P' in P_q(n, d+2e)]`
    pub test_e_2: ExactProb,
    /// `lucky <= q^{Delta'} test_e_2`
    pub holds: bool,
}

/// Both sides of `Pr[lucky] <= q^{Delta'} Pr[f P P' in P_q(n, d + 2e)]`,
/// exactly.
pub fn robust_reduction_check(
    f: &Polynomial,
    code: CodeParams,
    e: u32,
    delta_prime: u64,
    budget: Budget,
) -> Result<ReductionCheck> {
    let one = TestConfig::new(code, e, 1)?;
    let summary = robust_distance_experiment(f, &one, None, budget)?;
    let lucky_count: u64 = summary
        .histogram
        .range(..=delta_prime)
        .map(|(_, &c)| c)
        .sum();
    let lucky = ExactProb::new(lucky_count, summary.samples);
    let two = TestConfig::new(code, e, 2)?;
    let test_e_2 = exact_acceptance_probability(f, &two, budget)?;
    let factor = BigUint::from(code.q)
        .pow(u32::try_from(delta_prime).map_err(|_| Error::Parameter("Delta' too large".into()))?);
    let holds = BigUint::from(lucky.count) * BigUint::from(test_e_2.total)
        <= BigUint::from(test_e_2.count) * factor * BigUint::from(lucky.total);
    Ok(ReductionCheck {
        delta_prime,
        lucky,
        test_e_2,
        holds,
    })
}

/// Restriction of `f` to `{offset + sum_i y_i dirs[i]}`, as a polynomial in
/// `y`.
pub fn restrict_affine(f: &Polynomial, dirs: &[Vec<u32>], offset: &[u32]) -> Result<Polynomial> {
    let ring = f.ring();
    let field = ring.field();
    let sub = Ring::from_field(field, dirs.len(), u64::MAX)?;
    let table = f.evaluate_all();
    let mut vals = vec![0u32; sub.size()];
    let mut x = vec![0u32; ring.n()];
    for (idx, slot) in vals.iter_mut().enumerate() {
        let y = sub.digits(idx);
        x.copy_from_slice(offset);
        for (yi, dir) in y.iter().zip(dirs) {
            for (xj, &dj) in x.iter_mut().zip(dir) {
                *xj = field.add(*xj, field.mul(*yi, dj));
            }
        }
        *slot = table.value_at(&x);
    }
    Ok(EvalTable::new(sub, vals)?.interpolate())
}

fn akklr_accepts(f: &Polynomial, d: u32, dirs: &[Vec<u32>], offset: &[u32]) -> Result<bool> {
    Ok(restrict_affine(f, dirs, offset)?.has_degree_at_most(i64::from(d)))
}

fn check_akklr(f: &Polynomial, code: &CodeParams) -> Result<()> {
    let ring = f.ring();
    if ring.q() != code.q || ring.n() != code.n {
        return Err(Error::ParameterMismatch {
            left: ring.to_string(),
            right: format!("q={} n={}", code.q, code.n),
        });
    }
    if code.d as usize + 1 > code.n {
        return Err(Error::Parameter(format!(
            "d + 1 = {} exceeds n = {}",
            code.d + 1,
            code.n
        )));
    }
    Ok(())
}

/// One run of the affine-subspace test: restrict `f` to a uniform random
/// `(d+1)`-dimensional affine subspace and accept iff the restriction has
/// degree at most `d`.
pub fn akklr_test<R: Rng + ?Sized>(f: &Polynomial, code: &CodeParams, rng: &mut R) -> Result<bool> {
    check_akklr(f, code)?;
    let field = f.ring().field();
    let (k, n, q) = (code.d as usize + 1, code.n, code.q);
    let dirs = loop {
        let dirs: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        if Matrix::from_rows(&dirs, n).rank(field) == k {
            break dirs;
        }
    };
    let offset: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
    akklr_accepts(f, code.d, &dirs, &offset)
}

/// Exact acceptance over every full-rank direction tuple and offset.
pub fn exact_akklr(f: &Polynomial, code: &CodeParams, budget: Budget) -> Result<ExactProb> {
    check_akklr(f, code)?;
    let field = f.ring().field();
    let (k, n, q) = (code.d as usize + 1, code.n, code.q);
    check_budget(
        EnumerationSize::new(u64::from(q), (n * (k + 1)) as u64),
        budget.get(),
    )?;
    let mut count = 0u64;
    let mut total = 0u64;
    let mut err = None;
    for_each_vector(q, n * k, |flat| {
        let dirs: Vec<Vec<u32>> = flat.chunks(n).map(<[u32]>::to_vec).collect();
        if Matrix::from_rows(&dirs, n).rank(field) < k {
            return true;
        }
        for_each_vector(q, n, |offset| {
            match akklr_accepts(f, code.d, &dirs, offset) {
                Ok(acc) => {
                    total += 1;
                    count += u64::from(acc);
                    true
                }
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        err.is_none()
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(ExactProb::new(count, total))
}

pub fn sampled_akklr(
    f: &Polynomial,
    code: &CodeParams,
    trials: u64,
    seed: u64,
) -> Result<EstimateResult> {
    check_akklr(f, code)?;
    estimate(|rng| akklr_test(f, code, rng), trials, seed)
}

/// `prod_{i <= m} (1 - x_i^{q-1})`: one on `{x_1 = ... = x_m = 0}`, zero elsewhere.
pub fn subspace_indicator(ring: Ring, m: usize) -> Result<Polynomial> {
    if m > ring.n() {
        return Err(Error::Parameter(format!(
            "{m} coordinates in {} variables",
            ring.n()
        )));
    }
    let vals = (0..ring.size())
        .map(|i| u32::from(ring.digits(i)[..m].iter().all(|&v| v == 0)))
        .collect();
    Ok(EvalTable::new(ring, vals)?.interpolate())
}
