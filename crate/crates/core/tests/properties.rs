//! Property tests for the invariants of the algebra, codes and tests.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{exps_of, n_count, Naive};
use rmtest::algebra::{random_polynomial, Field, Monomial, Polynomial, Ring};
use rmtest::combin::{
    count_n, enumerate_d_range, extremal_monomial, n_q, u_range_size, CountParams,
};
use rmtest::estimator::{estimate, Budget};
use rmtest::genbasis::{structure_constants, to_generalized, FieldOrdering};
use rmtest::multtests::{
    corr_h_consistency, exact_acceptance_probability, exact_akklr, exact_corr_h,
    exact_degree_exponent, soundness_bound, TestConfig, UnivariatePoly,
};
use rmtest::rmcode::{distance, inner_product, is_member, CodeParams};
use rmtest::setmultilin::{random_system, system_vanishing_probability};
use rmtest::sztest::{degree_drop_probability, min_support_bound, SzMode, SzQuery};

/// `(q, n)` with `q in {2, 3}` and `1 <= n <= 3`.
fn small_ring() -> impl Strategy<Value = Ring> {
    (prop_oneof![Just(2u64), Just(3u64)], 1usize..=3).prop_map(|(q, n)| Ring::new(q, n).unwrap())
}

fn poly_in(ring: Ring) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(0..ring.q(), ring.size())
        .prop_map(move |c| Polynomial::from_coeffs(ring, c).unwrap())
}

fn poly_pair() -> impl Strategy<Value = (Polynomial, Polynomial)> {
    small_ring().prop_flat_map(|r| (poly_in(r), poly_in(r)))
}

/// A polynomial of degree at most `d` in `ring`, from a seed.
fn low_degree(ring: Ring, d: u32, seed: u64) -> Polynomial {
    random_polynomial(ring, i64::from(d), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluation_is_a_ring_map((f, g) in poly_pair()) {
        let prod = f.mul_reduced(&g).unwrap().evaluate_all();
        let field = f.ring().field();
        let pointwise: Vec<u32> = f.evaluate_all().values().iter()
            .zip(g.evaluate_all().values())
            .map(|(&a, &b)| field.mul(a, b))
            .collect();
        prop_assert_eq!(prod.values(), pointwise.as_slice());
        prop_assert_eq!(Naive::from_lib(&f.mul_reduced(&g).unwrap()), Naive::from_lib(&f).mul(&Naive::from_lib(&g)));
    }

    #[test]
    fn interpolation_inverts_evaluation((f, _) in poly_pair()) {
        prop_assert_eq!(f.evaluate_all().interpolate(), f);
    }

    #[test]
    fn graded_lex_is_monomial_order(
        a in proptest::collection::vec(0u32..4, 3),
        b in proptest::collection::vec(0u32..4, 3),
        c in proptest::collection::vec(0u32..4, 3),
    ) {
        let (ma, mb, mc) = (Monomial::new(a), Monomial::new(b), Monomial::new(c));
        prop_assert_eq!(ma.cmp(&mb), mb.cmp(&ma).reverse());
        prop_assert_eq!(ma == mb, ma.cmp(&mb).is_eq());
        if ma < mb {
            prop_assert!(ma.unreduced_mul(&mc) < mb.unreduced_mul(&mc));
        }
    }

    #[test]
    fn generalized_degree_is_degree((f, _) in poly_pair(), pick in 0usize..6) {
        let field = f.ring().field();
        let orderings = FieldOrdering::all(field);
        let ord = &orderings[pick % orderings.len()];
        let g = to_generalized(&f, ord).unwrap();
        prop_assert_eq!(g.degree(), f.degree().finite());
    }

    #[test]
    fn dual_codes_are_orthogonal(q in 2u64..=3, n in 1usize..=2, d_pick in 0u32..5, s1: u64, s2: u64) {
        let ring = Ring::new(q, n).unwrap();
        let d = d_pick % (ring.max_degree() + 1);
        let code = CodeParams::for_ring(&ring, d).unwrap();
        let p = low_degree(ring, d, s1);
        if let Ok(dual) = u32::try_from(code.dual_order()) {
            let qq = low_degree(ring, dual, s2);
            prop_assert!(inner_product(&p, &qq).unwrap().is_zero());
        }
    }

    #[test]
    fn distance_is_zero_exactly_on_codewords((f, _) in poly_pair(), d_pick in 0u32..7) {
        let ring = f.ring();
        let d = d_pick % (ring.max_degree() + 1);
        let code = CodeParams::for_ring(&ring, d).unwrap();
        let dist = distance(&f, &code, 1 << 22);
        prop_assume!(dist.is_ok());
        let dist = dist.unwrap();
        prop_assert_eq!(dist.distance == 0, is_member(&f, &code).unwrap());
        let away = f.evaluate_all().hamming_distance(&dist.nearest.evaluate_all()).unwrap();
        prop_assert_eq!(away as u64, dist.distance);
        prop_assert!(dist.nearest.has_degree_at_most(i64::from(d)));
    }

    #[test]
    fn codewords_are_far_apart(ring in small_ring(), d_pick in 0u32..7, s1: u64, s2: u64) {
        let d = d_pick % (ring.max_degree() + 1);
        let (a, b) = (low_degree(ring, d, s1), low_degree(ring, d, s2));
        prop_assume!(a != b);
        let apart = a.evaluate_all().hamming_distance(&b.evaluate_all()).unwrap() as u64;
        prop_assert!(apart >= min_support_bound(ring.q(), ring.n(), d));
    }

    #[test]
    fn support_dominates_disjoint_monomials((f, _) in poly_pair()) {
        prop_assume!(!f.is_zero());
        let ring = f.ring();
        let d = f.degree().finite().unwrap();
        let m0 = extremal_monomial(ring.q(), ring.n(), d).unwrap();
        let disjoint = enumerate_d_range(&m0, 0, ring.max_degree(), ring.q()).unwrap().len() as u64;
        prop_assert_eq!(disjoint, min_support_bound(ring.q(), ring.n(), d));
        prop_assert!(f.support_size() as u64 >= disjoint);
    }

    #[test]
    fn drop_probability_is_inverse_power_of_rank(ring in small_ring(), seed: u64, e_pick in 0u32..3, s_pick in 0u32..3) {
        let f = low_degree(ring, ring.max_degree(), seed);
        prop_assume!(!f.is_zero());
        let e = e_pick.min(ring.max_degree());
        let s = s_pick.min(e);
        let query = SzQuery::new(f, e, s).unwrap();
        prop_assume!(query.enumeration_size().fits(1 << 20));
        let rep = degree_drop_probability(&query, SzMode::Exact, Budget::default()).unwrap();
        let p = rep.probability.exact_prob().unwrap();
        prop_assert!(p.eq_inv_pow(ring.q(), rep.rank.unwrap()));
        prop_assert_eq!(rep.bound_holds, Some(true));
        if rep.coarse_exponent.is_some() {
            prop_assert_eq!(rep.coarse_holds, Some(true));
        }
    }

    #[test]
    fn tests_accept_codewords(q in 2u64..=3, seed: u64, d_pick in 0u32..3, e in 0u32..=1, k in 1u32..=2) {
        let n = 2;
        let ring = Ring::new(q, n).unwrap();
        let d = d_pick % (ring.max_degree() + 1);
        let f = low_degree(ring, d, seed);
        let code = CodeParams::for_ring(&ring, d).unwrap();
        let cfg = TestConfig::new(code, e, k).unwrap();
        let p = exact_acceptance_probability(&f, &cfg, Budget::default()).unwrap();
        prop_assert_eq!(p.count, p.total);
        if k < ring.q() {
            let coeffs: Vec<u64> = (0..=u64::from(k)).map(|i| (seed >> i) % q + u64::from(i == u64::from(k))).collect();
            let h = UnivariatePoly::new(ring.field(), &coeffs);
            if let Ok(h) = h {
                if h.degree() == k {
                    let c = exact_corr_h(&f, &cfg, &h, Budget::default()).unwrap();
                    prop_assert_eq!(c.count, c.total);
                }
            }
        }
        if (d as usize) < n {
            let a = exact_akklr(&f, &code, Budget::default()).unwrap();
            prop_assert_eq!(a.count, a.total);
        }
    }

    #[test]
    fn corr_h_below_root_of_test(seed: u64, d in 0u32..=2, e in 0u32..=1, k in 1u32..=2, c0 in 0u64..3, c1 in 0u64..3, lead in 1u64..3) {
        let ring = Ring::new(3, 2).unwrap();
        let f = low_degree(ring, ring.max_degree(), seed);
        let cfg = TestConfig::new(CodeParams::for_ring(&ring, d).unwrap(), e, k).unwrap();
        let coeffs = if k == 1 { vec![c0, lead] } else { vec![c0, c1, lead] };
        let h = UnivariatePoly::new(ring.field(), &coeffs).unwrap();
        prop_assert!(corr_h_consistency(&f, &cfg, &h, Budget::default()).unwrap().holds);
    }

    #[test]
    fn set_multilinear_vanishes_more_often(seed: u64, q in 2u64..=3, n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = 1 + (seed as usize) % n.min(3);
        let sys = random_system(Field::new(q).unwrap(), n, blocks, 2, 3, &mut rng).unwrap();
        let rep = system_vanishing_probability(&sys, 1 << 20).unwrap();
        prop_assert!(rep.holds);
        prop_assert!(rep.chain_monotone);
    }

    #[test]
    fn estimates_repeat(seed: u64, trials in 1u64..500) {
        let coin = |rng: &mut ChaCha8Rng| Ok(rand::Rng::gen_bool(rng, 0.3));
        let a = serde_json::to_string(&estimate(coin, trials, seed).unwrap()).unwrap();
        let b = serde_json::to_string(&estimate(coin, trials, seed).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn structure_constants_triangular_over_f3() {
    for ord in FieldOrdering::all(Field::new(3).unwrap()) {
        let g = structure_constants(&ord).unwrap();
        assert!(g.is_upper_triangular());
        for i in 0..3 {
            assert_ne!(g.get(i, i, i), 0, "{ord:?}");
        }
    }
}

#[test]
fn extremal_monomial_minimizes_range_sets() {
    for q in [2u32, 3] {
        for n in 1..=4usize {
            let top = (q - 1) * n as u32;
            let all: Vec<Monomial> = (0..(q as usize).pow(n as u32))
                .map(|i| Monomial::new(exps_of(q, n, i)))
                .collect();
            for d in 0..=top {
                let m0 = extremal_monomial(q, n, d).unwrap();
                for e in 0..=top - d {
                    for s in 0..=e {
                        let best = all
                            .iter()
                            .filter(|m| m.degree() == d)
                            .map(|m| u_range_size(m, s, e, q))
                            .min()
                            .unwrap();
                        assert_eq!(
                            u_range_size(&m0, s, e, q),
                            best,
                            "q={q} n={n} d={d} s={s} e={e}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn monomial_counts_match_enumeration() {
    for q in [2u32, 3, 5] {
        for n in 0..=6usize {
            for d in 0..=(q - 1) * n as u32 {
                let dp = count_n(CountParams {
                    q,
                    n: n as i64,
                    d: i64::from(d),
                });
                assert_eq!(dp as u64, n_count(q, n, d), "q={q} n={n} d={d}");
            }
        }
    }
}

#[test]
fn monomial_count_lower_bound() {
    for q in [2u32, 3, 5] {
        for l in 0..=6i64 {
            for e in 0..=(q as i64 - 1) * l {
                let t = e / (q as i64 - 1);
                if l >= t {
                    assert!(
                        n_q(q, l, e) >= u128::from(q).pow(t as u32),
                        "q={q} L={l} e={e}"
                    );
                }
            }
        }
    }
}

#[test]
fn exact_degree_bound_in_premise_range() {
    // q = 2, n = 8, d = 0: the premise allows Delta = 1, e <= 2/k
    let ring = Ring::new(2, 8).unwrap();
    let code = CodeParams::new(2, 8, 0).unwrap();
    let points: [[u32; 8]; 3] = [[1; 8], [0; 8], [1, 0, 1, 0, 1, 0, 1, 0]];
    for pt in points {
        let vals = (0..ring.size())
            .map(|i| u32::from(ring.digits(i) == pt))
            .collect();
        let f = rmtest::algebra::EvalTable::new(ring, vals)
            .unwrap()
            .interpolate();
        let delta = distance(&f, &code, 1 << 20).unwrap().distance;
        assert_eq!(delta, 1);
        for k in 1..=2u32 {
            let cfg = TestConfig::new(code, 1, k).unwrap();
            let b = soundness_bound(&cfg, delta, 6).unwrap();
            assert!(b.premise_holds);
            let p = exact_acceptance_probability(&f, &cfg, Budget::default()).unwrap();
            let exponent = exact_degree_exponent(&cfg, delta);
            assert!(
                u128::from(p.count) * 2u128.pow(exponent as u32)
                    <= u128::from(k) * u128::from(p.total)
            );
            assert!(p.to_f64() <= b.bound);
        }
    }
}
