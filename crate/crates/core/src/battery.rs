//! The acceptance battery behind `rmtest suite`: every finite-parameter
//! claim checked by exhaustive enumeration or seeded sampling, with a
//! deterministic JSON record.

use rand::{Rng, RngCore};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{random_polynomial, Field, Polynomial, Ring};
use crate::combin::verify_umax;
use crate::enumerate::for_each_vector;
use crate::error::Result;
use crate::estimator::{stream_rng, Budget};
use crate::genbasis::{basis_polys, prod_coeffs, to_generalized, ut_decompose, FieldOrdering};
use crate::multtests::{
    exact_acceptance_probability, exact_degree_exponent, robust_reduction_check,
    sampled_acceptance, squaring_trick_sweep, subspace_indicator, TestConfig,
};
use crate::rmcode::{character_membership, is_member, minimum_weight, CharacterMode, CodeParams};
use crate::setmultilin::{random_system, system_vanishing_probability};
use crate::sztest::{
    degree_drop_probability, min_support_bound, verify_tightness, SzMode, SzQuery,
};

/// Tolerance for floating comparisons of character sums.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub checks: u64,
    pub failures: u64,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub budget: u64,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl SuiteReport {
    /// One aligned line per criterion.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            out.push_str(&format!(
                "{:>2}  {:<4}  {:<34} checks={:<9} failures={}\n",
                c.id,
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.checks,
                c.failures
            ));
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: u64,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checks += 1;
        self.failures += u64::from(!ok);
    }

    fn finish(self, id: u32, name: &'static str, detail: Value) -> CriterionResult {
        CriterionResult {
            id,
            name,
            passed: self.failures == 0 && self.checks > 0,
            checks: self.checks,
            failures: self.failures,
            detail,
        }
    }
}

/// Every polynomial in `ring` with support among the monomials of degree at
/// most `d`.
pub fn all_polynomials(ring: Ring, d: u32) -> Vec<Polynomial> {
    let idx = ring.monomials_up_to(i64::from(d));
    let mut out = Vec::new();
    for_each_vector(ring.q(), idx.len(), |c| {
        let mut coeffs = vec![0u32; ring.size()];
        for (&i, &v) in idx.iter().zip(c) {
            coeffs[i] = v;
        }
        out.push(Polynomial::from_coeffs(ring, coeffs).expect("reduced"));
        true
    });
    out
}

/// Minimum weight of each code against the closed form.
pub fn min_support(budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut rows = Vec::new();
    for q in [2u32, 3] {
        for n in 1..=3usize {
            let ring = Ring::new(u64::from(q), n)?;
            for d in 0..=ring.max_degree() {
                let w = minimum_weight(&ring, d, budget.get())?;
                let expect = min_support_bound(q, n, d);
                t.record(w.weight == expect);
                rows.push(json!([q, n, d, w.weight, expect]));
            }
        }
    }
    Ok(t.finish(
        1,
        "minimum support of P_q(n,d)",
        json!({ "q_n_d_weight_expected": rows }),
    ))
}

/// `|U_s(m)| = |D_s(m)|` and the minimality of the extremal monomial.
pub fn umax() -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut checks = 0;
    for q in [2u32, 3] {
        for n in 1..=4usize {
            let r = verify_umax(q, n)?;
            checks += r.equinumerous_checks + r.minimality_checks + r.range_checks;
            t.record(r.passed());
        }
    }
    Ok(t.finish(
        2,
        "U/D equinumerous, extremal minimal",
        json!({ "set_checks": checks }),
    ))
}

/// Degree-drop probability against `q^{-|U_{s,e}(LM f)|}`.
pub fn degree_drop(budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut tight = 0u64;
    for (q, d) in [(2u64, 2u32), (3, 3)] {
        let ring = Ring::new(q, 2)?;
        for f in all_polynomials(ring, d)
            .into_iter()
            .filter(|f| !f.is_zero())
        {
            for e in 0..=2 {
                for s in 0..=e {
                    let query = SzQuery::new(f.clone(), e, s)?;
                    if !query.enumeration_size().fits(1 << 20) {
                        continue;
                    }
                    let rep = degree_drop_probability(&query, SzMode::Exact, budget)?;
                    t.record(rep.bound_holds == Some(true));
                    let p = rep.probability.exact_prob().expect("exact");
                    tight += u64::from(p.eq_inv_pow(ring.q(), rep.u_lm));
                }
            }
        }
    }
    Ok(t.finish(
        3,
        "degree-drop bound",
        json!({ "attained_with_equality": tight }),
    ))
}

/// Instances on which the witness is checked for equality.
pub const TIGHT_INSTANCES: [(u64, usize, u32, u32, u32); 12] = [
    (2, 2, 1, 1, 1),
    (2, 2, 0, 1, 1),
    (2, 2, 1, 1, 0),
    (2, 3, 1, 1, 1),
    (2, 3, 2, 1, 1),
    (2, 3, 1, 2, 1),
    (2, 3, 1, 2, 2),
    (3, 2, 1, 1, 1),
    (3, 2, 2, 1, 1),
    (3, 2, 2, 2, 1),
    (3, 2, 3, 1, 1),
    (5, 2, 3, 1, 1),
];

/// The witness attains `q^{-|U_{s,e}(m0)|}` exactly.
pub fn tightness(budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut rows = Vec::new();
    for (q, n, d, e, s) in TIGHT_INSTANCES {
        let ring = Ring::new(q, n)?;
        let r = verify_tightness(ring, d, e, s, &FieldOrdering::natural(ring.field()), budget)?;
        t.record(r.equal);
        rows.push(json!([
            q,
            n,
            d,
            e,
            s,
            r.probability.count,
            r.probability.total,
            r.u_m0
        ]));
    }
    Ok(t.finish(
        4,
        "tight witness equality",
        json!({ "q_n_d_e_s_count_total_u": rows }),
    ))
}

/// The subspace-indicator instance passes with probability at least
/// `q^{-N_q(L,e)}`.
pub fn hard_instance(budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let ring = Ring::new(2, 3)?;
    let f = subspace_indicator(ring, 2)?;
    let mut rows = Vec::new();
    for d in [2u32, 1] {
        let cfg = TestConfig::new(CodeParams::new(2, 3, d)?, 1, 1)?;
        let p = exact_acceptance_probability(&f, &cfg, budget)?;
        let exponent = exact_degree_exponent(&cfg, 2);
        t.record(p.ge_inv_pow(2, exponent));
        rows.push(json!({ "d": d, "count": p.count, "total": p.total, "exponent": exponent }));
    }
    Ok(t.finish(
        5,
        "hard instance lower bound",
        json!({ "f": f.to_string(), "runs": rows }),
    ))
}

/// Basis property, ut-decomposition reassembly and the product tensor.
pub fn basis_properties(seed: u64) -> Result<CriterionResult> {
    let mut t = Tally::default();
    for q in [2u64, 3, 5] {
        let field = Field::new(q)?;
        for ord in FieldOrdering::all(field) {
            let b = basis_polys(&ord)?;
            let ring = b[0].ring();
            for f in all_polynomials(ring, ring.max_degree()) {
                for (i, bi) in b.iter().enumerate() {
                    let fx = f.evaluate(&[ord.xi()[i]])?;
                    let g = &f.mul_reduced(bi)? - &bi.scale(fx);
                    let gen = to_generalized(&g, &ord)?;
                    t.record((0..=i as u32).all(|j| gen.coeff(&[j]) == 0));
                }
            }
        }
        let orderings = FieldOrdering::all(field);
        for i in 0..1000u64 {
            let mut rng = stream_rng(seed ^ q, i);
            let ord = &orderings[rng.gen_range(0..orderings.len())];
            let ring = Ring::from_field(field, 2, u64::MAX)?;
            let top = i64::from(ring.max_degree());
            let f = random_polynomial(ring, rng.gen_range(0..=top), &mut rng)?;
            let p = random_polynomial(ring, rng.gen_range(0..=top), &mut rng)?;
            let var = rng.gen_range(0..2);
            let ut = ut_decompose(&f, &p, var, ord)?;
            t.record(ut.reassemble()? == f.mul_reduced(&p)?);
            let k = rng.gen_range(2..=3);
            let factors = (0..k)
                .map(|_| random_polynomial(ring, top, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let pb = prod_coeffs(&factors, var, ord)?;
            t.record(pb.diagonal_nonzero() && pb.support_is_lower() && pb.assembly_matches());
        }
    }
    Ok(t.finish(6, "basis property, ut-decomp, products", Value::Null))
}

/// `p_full <= p_sm` on random partitioned systems.
pub fn set_multilinear(seed: u64, budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut chain_ok = 0u64;
    for i in 0..500u64 {
        let mut rng = stream_rng(seed.wrapping_add(7), i);
        let q = if i % 2 == 0 { 2 } else { 3 };
        let n = rng.gen_range(2..=8usize);
        let blocks = rng.gen_range(1..=n.min(4));
        let polys = rng.gen_range(1..=3);
        let sys = random_system(Field::new(q)?, n, blocks, polys, 4, &mut rng)?;
        let r = system_vanishing_probability(&sys, budget.get())?;
        t.record(r.holds);
        chain_ok += u64::from(r.chain_monotone);
    }
    Ok(t.finish(
        7,
        "set-multilinear vanishing",
        json!({ "chain_monotone": chain_ok }),
    ))
}

/// The dual character sum is the membership indicator.
pub fn character_identity(budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    for (q, n, ds) in [(2u64, 2usize, vec![0u32, 1, 2]), (3, 1, vec![0, 1, 2])] {
        let ring = Ring::new(q, n)?;
        for d in ds {
            let code = CodeParams::for_ring(&ring, d)?;
            for f in all_polynomials(ring, ring.max_degree()) {
                let member = is_member(&f, &code)?;
                let v = character_membership(&f, &code, CharacterMode::Exact, budget.get())?;
                let float = v.value();
                let target = if member { 1.0 } else { 0.0 };
                t.record(
                    v.indicator(FLOAT_TOL) == Some(member)
                        && (float.re - target).abs() <= FLOAT_TOL
                        && float.im.abs() <= FLOAT_TOL,
                );
            }
        }
    }
    Ok(t.finish(8, "character sum equals membership", Value::Null))
}

/// Base-case identity and degree-2 inequality of the squaring argument.
pub fn squaring(budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut worst: f64 = 0.0;
    for q in [2u64, 3] {
        for n in 1..=2usize {
            for e in 0..=1u32 {
                let r = squaring_trick_sweep(Ring::new(q, n)?, e, FLOAT_TOL, budget)?;
                t.record(r.passed(FLOAT_TOL));
                worst = worst.max(r.max_base_error);
            }
        }
    }
    Ok(t.finish(
        9,
        "squaring chain",
        json!({ "max_base_error_below_tol": worst <= FLOAT_TOL }),
    ))
}

/// `Pr[lucky] <= q^{Delta'} Pr[f P P' in P_q(n, d + 2e)]` over all of `P_2(3)`.
pub fn robust_reduction(budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let ring = Ring::new(2, 3)?;
    let code = CodeParams::new(2, 3, 0)?;
    for f in all_polynomials(ring, ring.max_degree()) {
        for dp in [1, 2] {
            t.record(robust_reduction_check(&f, code, 1, dp, budget)?.holds);
        }
    }
    Ok(t.finish(10, "robustness reduction", Value::Null))
}

/// Wilson intervals from 1000-trial runs cover the exact value in at least
/// 90 of 100 runs.
pub fn calibration(seed: u64, budget: Budget) -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut master = stream_rng(seed, u64::MAX);
    let mut rows = Vec::new();

    let ring = Ring::new(2, 3)?;
    let hard = subspace_indicator(ring, 2)?;
    let cfg = TestConfig::new(CodeParams::new(2, 3, 1)?, 1, 1)?;
    let exact = exact_acceptance_probability(&hard, &cfg, budget)?.to_f64();
    let mut covered = 0;
    for _ in 0..100 {
        covered +=
            u32::from(sampled_acceptance(&hard, &cfg, 1000, master.next_u64())?.covers(exact));
    }
    t.record(covered >= 90);
    rows.push(json!({ "instance": "hard instance, d=1", "p": exact, "covered": covered }));

    let f: Polynomial = "q=3 n=2: X1^2*X2 + X2".parse()?;
    let query = SzQuery::new(f, 1, 1)?;
    let exact = degree_drop_probability(&query, SzMode::Exact, budget)?
        .probability
        .p_hat;
    let mut covered = 0;
    for _ in 0..100 {
        let mode = SzMode::Sampled {
            trials: 1000,
            seed: master.next_u64(),
        };
        let est = degree_drop_probability(&query, mode, budget)?.probability;
        covered += u32::from(est.ci_low <= exact && exact <= est.ci_high);
    }
    t.record(covered >= 90);
    rows.push(json!({ "instance": "degree drop, q=3", "p": exact, "covered": covered }));
    Ok(t.finish(11, "Monte Carlo calibration", json!(rows)))
}

/// Runs criteria 1 through 11.
pub fn run_suite(seed: u64, budget: Budget) -> Result<SuiteReport> {
    let criteria = vec![
        min_support(budget)?,
        umax()?,
        degree_drop(budget)?,
        tightness(budget)?,
        hard_instance(budget)?,
        basis_properties(seed)?,
        set_multilinear(seed, budget)?,
        character_identity(budget)?,
        squaring(budget)?,
        robust_reduction(budget)?,
        calibration(seed, budget)?,
    ];
    Ok(SuiteReport {
        seed,
        budget: budget.get(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    })
}
