//! Reed-Muller codes `P_q(n, d)`: membership, exact coset distance,
//! minimum weight, inner products, the character-sum membership indicator
//! and the search for a direction along which far-ness survives
//! restriction.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    random_polynomial, restrict, Field, FieldElement, LinearForm, Polynomial, Ring,
};
use crate::combin::n_q;
use crate::enumerate::{walk_combinations, GrayWalk};
use crate::error::{check_budget, EnumerationSize, Error, Result};
use crate::linalg::Matrix;

/// The code `P_q(n, d)` with co-degree `r = (q-1)n - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub q: u32,
    pub n: usize,
    pub d: u32,
}

impl CodeParams {
    pub fn new(q: u32, n: usize, d: u32) -> Result<Self> {
        let field = Field::new(u64::from(q))?;
        let top = (field.order() - 1) as u64 * n as u64;
        if u64::from(d) > top {
            return Err(Error::Parameter(format!(
                "order {d} exceeds n(q-1) = {top}"
            )));
        }
        Ok(CodeParams { q, n, d })
    }

    pub fn for_ring(ring: &Ring, d: u32) -> Result<Self> {
        Self::new(ring.q(), ring.n(), d)
    }

    pub fn r(&self) -> u32 {
        (self.q - 1) * self.n as u32 - self.d
    }

    /// Dimension `N_q(n, d)`.
    pub fn dimension(&self) -> u64 {
        n_q(self.q, self.n as i64, i64::from(self.d)) as u64
    }

    /// Order of the dual code, `r - 1`; negative means the dual is `{0}`.
    pub fn dual_order(&self) -> i64 {
        i64::from(self.r()) - 1
    }

    fn check(&self, ring: &Ring) -> Result<()> {
        if ring.q() != self.q || ring.n() != self.n {
            return Err(Error::ParameterMismatch {
                left: ring.to_string(),
                right: format!("q={} n={}", self.q, self.n),
            });
        }
        Ok(())
    }
}

/// `deg(f) <= d`; the zero polynomial belongs to every code.
pub fn is_member(f: &Polynomial, code: &CodeParams) -> Result<bool> {
    code.check(&f.ring())?;
    Ok(f.has_degree_at_most(i64::from(code.d)))
}

/// Value tables of the monomials of degree at most `d`, stored sparsely
/// as `(point, value)` lists, with their coefficient indices.
fn monomial_columns(ring: &Ring, d: i64) -> (Vec<usize>, Vec<Vec<(usize, u32)>>) {
    let idx = ring.monomials_up_to(d);
    let cols = idx
        .iter()
        .map(|&i| {
            let mut coeffs = vec![0u32; ring.size()];
            coeffs[i] = 1;
            let p = Polynomial::from_coeffs(*ring, coeffs).expect("unit coefficient");
            p.evaluate_all()
                .values()
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(x, &v)| (x, v))
                .collect()
        })
        .collect();
    (idx, cols)
}

fn assemble(ring: &Ring, idx: &[usize], alpha: &[u32]) -> Polynomial {
    let mut coeffs = vec![0u32; ring.size()];
    for (&i, &a) in idx.iter().zip(alpha) {
        coeffs[i] = a;
    }
    Polynomial::from_coeffs(*ring, coeffs).expect("reduced coefficients")
}

/// Exact Hamming distance from `f` to the code, with a nearest codeword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub distance: u64,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub nearest: Polynomial,
    /// Number of codewords compared.
    pub enumerated: u64,
}

/// Enumerates every codeword `g` (one coefficient change per step,
/// updating the table of `f - g` incrementally) and keeps the first
/// minimizer in walk order.
pub fn distance(f: &Polynomial, code: &CodeParams, budget: u64) -> Result<DistanceResult> {
    let ring = f.ring();
    code.check(&ring)?;
    if is_member(f, code)? {
        return Ok(DistanceResult {
            distance: 0,
            nearest: f.clone(),
            enumerated: 0,
        });
    }
    let k = code.dimension();
    let total = check_budget(EnumerationSize::new(u64::from(code.q), k), budget)?;
    let field = ring.field();
    let q = field.order();
    let (idx, cols) = monomial_columns(&ring, i64::from(code.d));
    let mut diff = f.evaluate_all().values().to_vec();
    let mut weight = diff.iter().filter(|&&v| v != 0).count() as u64;
    let mut alpha = vec![0u32; idx.len()];
    let mut best = (weight, alpha.clone());
    for j in GrayWalk::new(q, idx.len()).expect("checked against budget") {
        alpha[j] = if alpha[j] + 1 == q { 0 } else { alpha[j] + 1 };
        // g gains one copy of column j, so f - g loses it
        for &(x, v) in &cols[j] {
            let before = diff[x];
            let after = field.sub(before, v);
            diff[x] = after;
            match (before == 0, after == 0) {
                (true, false) => weight += 1,
                (false, true) => weight -= 1,
                _ => {}
            }
        }
        if weight < best.0 {
            best = (weight, alpha.clone());
        }
    }
    Ok(DistanceResult {
        distance: best.0,
        nearest: assemble(&ring, &idx, &best.1),
        enumerated: total,
    })
}

/// How a minimum weight was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMethod {
    /// Every nonzero codeword was enumerated.
    Enumeration,
    /// Every support set of smaller size was ruled out by a rank check.
    SupportRank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinWeight {
    pub weight: u64,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub witness: Polynomial,
    pub method: WeightMethod,
    /// Codewords enumerated or support sets checked.
    pub work: u64,
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Smallest support of a nonzero codeword of `P_q(n, d)`.
///
/// Enumerates codewords when `q^{N_q(n,d)}` fits the budget. Otherwise it
/// tries support sizes `w = 1, 2, ...`: a nonzero codeword supported inside
/// `S` exists iff the evaluation matrix restricted to the complement of `S`
/// has rank below the dimension. The budget then caps the number of support
/// sets examined.
pub fn minimum_weight(ring: &Ring, d: u32, budget: u64) -> Result<MinWeight> {
    let code = CodeParams::for_ring(ring, d)?;
    let k = code.dimension();
    let size = EnumerationSize::new(u64::from(code.q), k);
    if size.fits(budget) {
        return min_weight_by_enumeration(ring, d);
    }
    min_weight_by_supports(ring, d, budget).map_err(|e| match e {
        Error::Infeasible { .. } => Error::Infeasible {
            required: size,
            budget,
        },
        other => other,
    })
}

fn min_weight_by_enumeration(ring: &Ring, d: u32) -> Result<MinWeight> {
    let field = ring.field();
    let q = field.order();
    let (idx, cols) = monomial_columns(ring, i64::from(d));
    let mut vals = vec![0u32; ring.size()];
    let mut weight = 0u64;
    let mut alpha = vec![0u32; idx.len()];
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut steps = 0u64;
    for j in GrayWalk::new(q, idx.len()).expect("caller checked the size") {
        steps += 1;
        alpha[j] = if alpha[j] + 1 == q { 0 } else { alpha[j] + 1 };
        for &(x, v) in &cols[j] {
            let before = vals[x];
            let after = field.add(before, v);
            vals[x] = after;
            match (before == 0, after == 0) {
                (true, false) => weight += 1,
                (false, true) => weight -= 1,
                _ => {}
            }
        }
        // alpha is nonzero at every step after the start
        if best.as_ref().is_none_or(|b| weight < b.0) {
            best = Some((weight, alpha.clone()));
        }
    }
    let (weight, alpha) =
        best.ok_or_else(|| Error::Parameter("code has no nonzero codeword".into()))?;
    Ok(MinWeight {
        weight,
        witness: assemble(ring, &idx, &alpha),
        method: WeightMethod::Enumeration,
        work: steps,
    })
}

fn min_weight_by_supports(ring: &Ring, d: u32, budget: u64) -> Result<MinWeight> {
    let field = ring.field();
    let points = ring.size();
    let (idx, cols) = monomial_columns(ring, i64::from(d));
    let k = idx.len();
    // dense evaluation matrix: row per point, column per monomial
    let mut eval = vec![0u32; points * k];
    for (c, col) in cols.iter().enumerate() {
        for &(x, v) in col {
            eval[x * k + c] = v;
        }
    }
    let mut work = 0u64;
    for w in 1..=points as u64 {
        let sets = binomial(points as u64, w).unwrap_or(u64::MAX);
        work = work.saturating_add(sets);
        if work > budget {
            return Err(Error::Infeasible {
                required: EnumerationSize::new(work, 1),
                budget,
            });
        }
        // shard by the first element of the support set
        let found = (0..points).into_par_iter().find_map_first(|first| {
            let mut set = vec![first];
            search_supports(field, &eval, points, k, w as usize, &mut set)
        });
        if let Some(alpha) = found {
            let witness = assemble(ring, &idx, &alpha);
            let weight = witness.support_size() as u64;
            debug_assert_eq!(weight, w);
            return Ok(MinWeight {
                weight,
                witness,
                method: WeightMethod::SupportRank,
                work,
            });
        }
    }
    Err(Error::Parameter("code has no nonzero codeword".into()))
}

/// Extends `set` (increasing point indices) to size `w` and returns the
/// coefficients of a nonzero codeword vanishing off the first such set
/// that admits one.
fn search_supports(
    field: Field,
    eval: &[u32],
    points: usize,
    k: usize,
    w: usize,
    set: &mut Vec<usize>,
) -> Option<Vec<u32>> {
    if set.len() == w {
        let mut m = Matrix::zeros(points - w, k);
        let mut r = 0;
        let mut s = set.iter().peekable();
        for x in 0..points {
            if s.peek() == Some(&&x) {
                s.next();
                continue;
            }
            m.data[r * k..(r + 1) * k].copy_from_slice(&eval[x * k..(x + 1) * k]);
            r += 1;
        }
        return m.kernel_vector(field);
    }
    let start = set.last().map_or(0, |&x| x + 1);
    let remaining = w - set.len();
    for x in start..=points - remaining {
        set.push(x);
        let hit = search_supports(field, eval, points, k, w, set);
        set.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// `<f, g> = sum_x f(x) g(x)` over all points.
pub fn inner_product(f: &Polynomial, g: &Polynomial) -> Result<FieldElement> {
    let ring = f.ring();
    ring.ensure_same(&g.ring())?;
    let field = ring.field();
    let a = f.evaluate_all();
    let b = g.evaluate_all();
    let s = a
        .values()
        .iter()
        .zip(b.values())
        .fold(0u32, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
    Ok(field.element(u64::from(s)))
}

/// `omega^a` for the primitive root `omega = exp(2 pi i / q)`.
pub fn root_of_unity(q: u32, a: u32) -> Complex64 {
    Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * f64::from(a) / f64::from(q),
    )
}

/// How a character average is represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharacterForm {
    /// Exact counts per exponent of omega; the value is zero iff all
    /// counts agree.
    Cyclotomic,
    /// Floating-point complex sum over the full dual code.
    Floating,
    /// Monte Carlo average over sampled dual codewords.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterValue {
    pub form: CharacterForm,
    /// `counts[a]` = number of dual codewords `Q` with `<f, Q> = a`.
    pub counts: Vec<u64>,
    pub total: u64,
    pub re: f64,
    pub im: f64,
}

impl CharacterValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// The membership indicator, decided exactly in cyclotomic form and to
    /// within `tol` otherwise; `None` if neither 0 nor 1.
    pub fn indicator(&self, tol: f64) -> Option<bool> {
        match self.form {
            CharacterForm::Cyclotomic => {
                if self.counts[0] == self.total {
                    Some(true)
                } else if self.counts.iter().all(|&c| c == self.counts[0]) {
                    Some(false)
                } else {
                    None
                }
            }
            _ => {
                let v = self.value();
                if (v - 1.0).norm() <= tol {
                    Some(true)
                } else if v.norm() <= tol {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }
}

/// Evaluation mode for character averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterMode {
    Exact,
    Sampled { trials: u64, seed: u64 },
}

/// `avg_{Q in P_q(n, r-1)} omega^{<f, Q>}`, which is 1 when `f` is in the
/// code and 0 otherwise.
pub fn character_membership(
    f: &Polynomial,
    code: &CodeParams,
    mode: CharacterMode,
    budget: u64,
) -> Result<CharacterValue> {
    let ring = f.ring();
    code.check(&ring)?;
    let field = ring.field();
    let q = field.order();
    let dual = code.dual_order();
    // <f, Q> is linear in the coefficients of Q: weight of monomial m is <f, m>
    let idx = ring.monomials_up_to(dual);
    let fvals = f.evaluate_all();
    let weights: Vec<u32> = idx
        .iter()
        .map(|&i| {
            let mut c = vec![0u32; ring.size()];
            c[i] = 1;
            let m = Polynomial::from_coeffs(ring, c).expect("unit coefficient");
            let mv = m.evaluate_all();
            fvals
                .values()
                .iter()
                .zip(mv.values())
                .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect();
    match mode {
        CharacterMode::Exact => {
            let total = check_budget(EnumerationSize::new(u64::from(q), idx.len() as u64), budget)?;
            let mut counts = vec![0u64; q as usize];
            let cols: Vec<Vec<u32>> = weights.iter().map(|&w| vec![w]).collect();
            let mut sum = Complex64::new(0.0, 0.0);
            walk_combinations(field, &cols, &[0], |_, v| {
                counts[v[0] as usize] += 1;
                if q > 5 {
                    sum += root_of_unity(q, v[0]);
                }
            });
            let form = if q <= 5 {
                CharacterForm::Cyclotomic
            } else {
                CharacterForm::Floating
            };
            if q <= 5 {
                sum = counts
                    .iter()
                    .enumerate()
                    .map(|(a, &c)| root_of_unity(q, a as u32) * c as f64)
                    .sum();
            }
            let v = sum / total as f64;
            Ok(CharacterValue {
                form,
                counts,
                total,
                re: v.re,
                im: v.im,
            })
        }
        CharacterMode::Sampled { trials, seed } => {
            if trials == 0 {
                return Err(Error::Parameter("trials must be positive".into()));
            }
            let mut counts = vec![0u64; q as usize];
            for t in 0..trials {
                let mut rng = crate::estimator::stream_rng(seed, t);
                let s = if dual < 0 {
                    0
                } else {
                    let qpoly = random_polynomial(ring, dual, &mut rng)?;
                    inner_product(f, &qpoly)?.value()
                };
                counts[s as usize] += 1;
            }
            let sum: Complex64 = counts
                .iter()
                .enumerate()
                .map(|(a, &c)| root_of_unity(q, a as u32) * c as f64)
                .sum();
            let v = sum / trials as f64;
            Ok(CharacterValue {
                form: CharacterForm::Sampled,
                counts,
                total: trials,
                re: v.re,
                im: v.im,
            })
        }
    }
}

/// Distances of the restrictions of `f` to the hyperplanes `l = alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionReport {
    pub form: Vec<u32>,
    /// `distances[alpha]` = distance of `f|_{l = alpha}` to `P_q(n-1, d)`.
    pub distances: Vec<u64>,
    pub qualifies: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionSearch {
    pub threshold: u64,
    pub found: Option<Vec<u32>>,
    pub report: Vec<DirectionReport>,
}

impl DirectionSearch {
    pub fn found_form(&self) -> Option<LinearForm> {
        self.found.clone().map(LinearForm::new)
    }
}

/// Scans the normalized nonzero linear forms in lexicographic order and
/// reports, for each, whether every restriction stays at distance at least
/// `ceil(delta / q^3)` from `P_q(n-1, d)`. `found` is the first qualifying
/// form.
pub fn find_good_direction(
    f: &Polynomial,
    code: &CodeParams,
    delta: u64,
    budget: u64,
) -> Result<DirectionSearch> {
    let ring = f.ring();
    code.check(&ring)?;
    let sub = ring.drop_var()?;
    let q = u64::from(code.q);
    let threshold = delta.div_ceil(q * q * q);
    let top = (code.q - 1) * sub.n() as u32;
    let sub_code = CodeParams::for_ring(&sub, code.d.min(top))?;
    check_budget(EnumerationSize::new(q, sub_code.dimension()), budget)?;
    let forms = LinearForm::normalized_forms(&ring);
    let report = forms
        .par_iter()
        .map(|ell| -> Result<DirectionReport> {
            let mut distances = Vec::with_capacity(code.q as usize);
            for alpha in 0..code.q {
                let g = restrict(f, ell, alpha)?;
                distances.push(distance(&g, &sub_code, budget)?.distance);
            }
            let qualifies = distances.iter().all(|&x| x >= threshold);
            Ok(DirectionReport {
                form: ell.coeffs().to_vec(),
                distances,
                qualifies,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let found = report.iter().find(|r| r.qualifies).map(|r| r.form.clone());
    Ok(DirectionSearch {
        threshold,
        found,
        report,
    })
}

/// Uniform codeword of `P_q(n, d)` from a seed, for examples and tests.
pub fn random_codeword(ring: Ring, d: u32, seed: u64) -> Result<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_polynomial(ring, i64::from(d), &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::evaluate_all;
    use crate::enumerate::for_each_vector;

    const BIG: u64 = 1 << 24;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    /// Every polynomial of `ring`, in coefficient-index order.
    fn all_polys(ring: Ring) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for_each_vector(ring.q(), ring.size(), |c| {
            out.push(Polynomial::from_coeffs(ring, c.to_vec()).unwrap());
            true
        });
        out
    }

    #[test]
    fn membership_examples() {
        let code = CodeParams::new(2, 2, 1).unwrap();
        assert!(!is_member(&p("q=2 n=2: X1*X2"), &code).unwrap());
        let code0 = CodeParams::new(2, 2, 0).unwrap();
        assert!(is_member(&p("q=2 n=2: 0"), &code0).unwrap());
        assert!(is_member(&p("q=3 n=2: 1"), &code).is_err());
        assert!(CodeParams::new(2, 2, 3).is_err());
        assert_eq!(CodeParams::new(3, 2, 1).unwrap().r(), 3);
    }

    #[test]
    fn membership_agrees_with_dual_orthogonality() {
        let ring = Ring::new(2, 2).unwrap();
        for d in 0..=2 {
            let code = CodeParams::new(2, 2, d).unwrap();
            let dual = all_polys(ring)
                .into_iter()
                .filter(|g| g.has_degree_at_most(code.dual_order()))
                .collect::<Vec<_>>();
            for f in all_polys(ring) {
                let orth = dual.iter().all(|g| inner_product(&f, g).unwrap().is_zero());
                assert_eq!(orth, is_member(&f, &code).unwrap(), "{f} d={d}");
            }
        }
    }

    #[test]
    fn duality_small_rings() {
        for (q, n) in [(2u64, 1usize), (2, 2), (3, 1), (3, 2)] {
            let ring = Ring::new(q, n).unwrap();
            let polys = all_polys(ring);
            for d in 0..=ring.max_degree() {
                let code = CodeParams::for_ring(&ring, d).unwrap();
                let primal: Vec<_> = polys
                    .iter()
                    .filter(|f| f.has_degree_at_most(i64::from(d)))
                    .collect();
                let dual: Vec<_> = polys
                    .iter()
                    .filter(|f| f.has_degree_at_most(code.dual_order()))
                    .collect();
                for a in &primal {
                    for b in &dual {
                        assert!(inner_product(a, b).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let f = p("q=2 n=1: X1");
        assert_eq!(inner_product(&f, &p("q=2 n=1: 1")).unwrap().value(), 1);
        assert!(inner_product(&f, &p("q=2 n=1: 0")).unwrap().is_zero());
        assert!(inner_product(&f, &p("q=3 n=1: 1")).is_err());
    }

    #[test]
    fn distance_examples() {
        let code = CodeParams::new(2, 2, 1).unwrap();
        let r = distance(&p("q=2 n=2: X1*X2"), &code, BIG).unwrap();
        assert_eq!(r.distance, 1);
        assert_eq!(
            evaluate_all(&r.nearest)
                .hamming_distance(&p("q=2 n=2: X1*X2").evaluate_all())
                .unwrap(),
            1
        );
        assert!(r.nearest.has_degree_at_most(1));
        let f = p("q=3 n=2: X1 + 2*X2");
        let r = distance(&f, &CodeParams::new(3, 2, 1).unwrap(), BIG).unwrap();
        assert_eq!((r.distance, r.nearest), (0, f));
    }

    #[test]
    fn distance_matches_naive_minimum() {
        let ring = Ring::new(2, 3).unwrap();
        let polys = all_polys(ring);
        for d in 0..=2 {
            let code = CodeParams::new(2, 3, d).unwrap();
            let words: Vec<_> = polys
                .iter()
                .filter(|g| g.has_degree_at_most(i64::from(d)))
                .map(|g| g.evaluate_all())
                .collect();
            for f in polys.iter().step_by(7) {
                let t = f.evaluate_all();
                let naive = words
                    .iter()
                    .map(|w| w.hamming_distance(&t).unwrap())
                    .min()
                    .unwrap() as u64;
                let r = distance(f, &code, BIG).unwrap();
                assert_eq!(r.distance, naive);
                assert_eq!(
                    r.nearest.evaluate_all().hamming_distance(&t).unwrap() as u64,
                    naive
                );
            }
        }
    }

    #[test]
    fn hard_instance_is_far_from_other_codewords() {
        // f = (1 + x1)(1 + x2) over F_2 with n = 3: every other codeword of
        // degree 2 differs from f in at least 2 points
        let f = p("q=2 n=3: X1*X2 + X1 + X2 + 1");
        let ring = f.ring();
        let t = f.evaluate_all();
        let min_other = all_polys(ring)
            .into_iter()
            .filter(|g| g.has_degree_at_most(2) && *g != f)
            .map(|g| g.evaluate_all().hamming_distance(&t).unwrap())
            .min()
            .unwrap();
        assert_eq!(min_other, 2);
        assert_eq!(
            distance(&f, &CodeParams::new(2, 3, 2).unwrap(), BIG)
                .unwrap()
                .distance,
            0
        );
    }

    #[test]
    fn distance_budget() {
        let f = p("q=3 n=3: X1^2*X2^2*X3^2");
        let err = distance(&f, &CodeParams::new(3, 3, 5).unwrap(), 1000).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }

    #[test]
    fn minimum_weight_both_methods_agree() {
        for (q, n) in [(2u64, 3usize), (3, 2)] {
            let ring = Ring::new(q, n).unwrap();
            for d in 0..=ring.max_degree() {
                let a = min_weight_by_enumeration(&ring, d).unwrap();
                let b = min_weight_by_supports(&ring, d, BIG).unwrap();
                assert_eq!(a.weight, b.weight, "q={q} n={n} d={d}");
                assert_eq!(a.witness.support_size() as u64, a.weight);
                assert!(b.witness.has_degree_at_most(i64::from(d)) && !b.witness.is_zero());
            }
        }
        let ring = Ring::new(3, 2).unwrap();
        assert_eq!(
            minimum_weight(&ring, 4, 10).unwrap().method,
            WeightMethod::SupportRank
        );
        assert_eq!(
            minimum_weight(&ring, 1, BIG).unwrap().method,
            WeightMethod::Enumeration
        );
    }

    #[test]
    fn character_indicator_examples() {
        let code = CodeParams::new(2, 1, 0).unwrap();
        let v = character_membership(&p("q=2 n=1: X1"), &code, CharacterMode::Exact, BIG).unwrap();
        assert_eq!(v.counts, vec![1, 1]);
        assert_eq!(v.indicator(1e-9), Some(false));
        assert!(v.value().norm() < 1e-12);
        let code = CodeParams::new(3, 2, 2).unwrap();
        let v = character_membership(&p("q=3 n=2: X1*X2 + 2"), &code, CharacterMode::Exact, BIG)
            .unwrap();
        assert_eq!(v.indicator(1e-9), Some(true));
        // a code with r = 0 has dual {0}
        let code = CodeParams::new(2, 2, 2).unwrap();
        let v =
            character_membership(&p("q=2 n=2: X1*X2"), &code, CharacterMode::Exact, BIG).unwrap();
        assert_eq!((v.total, v.indicator(1e-9)), (1, Some(true)));
    }

    #[test]
    fn character_indicator_floating_mode() {
        let code = CodeParams::new(7, 1, 2).unwrap();
        for (s, member) in [("q=7 n=1: X1^2 + 3", true), ("q=7 n=1: X1^5", false)] {
            let v = character_membership(&p(s), &code, CharacterMode::Exact, BIG).unwrap();
            assert_eq!(v.form, CharacterForm::Floating);
            assert_eq!(v.indicator(1e-9), Some(member));
        }
    }

    #[test]
    fn character_indicator_sampled() {
        let code = CodeParams::new(2, 2, 1).unwrap();
        let v = character_membership(
            &p("q=2 n=2: X1"),
            &code,
            CharacterMode::Sampled {
                trials: 50,
                seed: 3,
            },
            BIG,
        )
        .unwrap();
        assert_eq!(v.indicator(1e-9), Some(true));
        let w = character_membership(
            &p("q=2 n=2: X1*X2"),
            &code,
            CharacterMode::Sampled {
                trials: 2000,
                seed: 3,
            },
            BIG,
        )
        .unwrap();
        assert!(w.value().norm() < 0.1);
    }

    #[test]
    fn direction_search_for_a_single_point_function() {
        // X1 X2 X3 is nonzero at one point only, so every direction has a
        // hyperplane on which the restriction vanishes
        let f = p("q=2 n=3: X1*X2*X3");
        let code = CodeParams::new(2, 3, 1).unwrap();
        let s = find_good_direction(&f, &code, 1, BIG).unwrap();
        assert_eq!(s.report.len(), 7);
        assert_eq!(s.threshold, 1);
        assert!(s.found.is_none());
        assert!(s.report.iter().all(|r| r.distances.contains(&0)));
    }

    #[test]
    fn direction_search_finds_a_direction_for_a_bent_function() {
        let f = p("q=2 n=4: X1*X2 + X3*X4");
        let code = CodeParams::new(2, 4, 1).unwrap();
        assert_eq!(distance(&f, &code, BIG).unwrap().distance, 6);
        let s = find_good_direction(&f, &code, 6, BIG).unwrap();
        assert_eq!(s.report.len(), 15);
        assert_eq!(s.found, Some(vec![0, 0, 0, 1]));
    }

    #[test]
    fn direction_search_for_codewords() {
        let f = p("q=3 n=2: X1*X2 + X1");
        let code = CodeParams::new(3, 2, 2).unwrap();
        let s = find_good_direction(&f, &code, 1, BIG).unwrap();
        assert_eq!(s.report.len(), 4);
        assert!(s.found.is_none());
    }
}
