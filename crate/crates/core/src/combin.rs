//! Monomial counting: `N_q(n, d)`, the dominating and disjoint sets
//! `U_s(m)`, `D_s(m)` and their unions over `s..=e`, and the extremal
//! monomial `m0 = X_1^{q-1} ... X_u^{q-1} X_{u+1}^v`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{is_prime, Monomial};
use crate::error::{Error, Result};

/// Arguments of `N_q(n, d)`; `n` may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountParams {
    pub q: u32,
    pub n: i64,
    pub d: i64,
}

/// Number of monomials in `n` variables with individual degree below `q`
/// and total degree at most `d`. Defined as 1 for `n < 0`.
pub fn count_n(p: CountParams) -> u128 {
    if p.n < 0 {
        return 1;
    }
    if p.d < 0 {
        return 0;
    }
    let q = p.q as usize;
    let n = p.n as usize;
    let top = ((q - 1) * n).min(p.d as usize);
    // ways[t]: exponent vectors over the variables seen so far with sum t
    let mut ways = vec![0u128; top + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; top + 1];
        for (t, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 0..q.min(top + 1 - t) {
                next[t + e] = next[t + e].saturating_add(w);
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &w| a.saturating_add(w))
}

/// Shorthand for `count_n(CountParams { q, n, d })`.
pub fn n_q(q: u32, n: i64, d: i64) -> u128 {
    count_n(CountParams { q, n, d })
}

/// A set of reduced monomials of `P_q(n)`, ordered by graded lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSet {
    pub q: u32,
    pub n: usize,
    pub members: BTreeSet<Monomial>,
}

impl MonomialSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.members.iter()
    }
}

/// All exponent vectors with `lo[j] <= e_j <= hi[j]` and `sum e_j = total`.
fn bounded_vectors(lo: &[u32], hi: &[u32], total: u32) -> Vec<Vec<u32>> {
    let n = lo.len();
    // suffix sums of the bounds for pruning
    let mut lo_suffix = vec![0u32; n + 1];
    let mut hi_suffix = vec![0u32; n + 1];
    for j in (0..n).rev() {
        lo_suffix[j] = lo_suffix[j + 1] + lo[j];
        hi_suffix[j] = hi_suffix[j + 1] + hi[j];
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(
        j: usize,
        left: u32,
        lo: &[u32],
        hi: &[u32],
        lo_suffix: &[u32],
        hi_suffix: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if j == lo.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < lo_suffix[j] || left > hi_suffix[j] {
            return;
        }
        for e in lo[j]..=hi[j].min(left) {
            cur[j] = e;
            rec(j + 1, left - e, lo, hi, lo_suffix, hi_suffix, cur, out);
        }
        cur[j] = 0;
    }
    rec(0, total, lo, hi, &lo_suffix, &hi_suffix, &mut cur, &mut out);
    out
}

fn check_monomial(m: &Monomial, q: u32) -> Result<()> {
    if !is_prime(u64::from(q)) {
        return Err(Error::NotPrime(u64::from(q)));
    }
    if !m.is_reduced(q) {
        return Err(Error::Parameter(format!("{m} is not reduced for q={q}")));
    }
    Ok(())
}

/// `U_s(m)`: monomials of degree `deg(m) + s` dominating `m` coordinatewise.
pub fn enumerate_u(m: &Monomial, s: u32, q: u32) -> Result<MonomialSet> {
    enumerate_u_range(m, s, s, q)
}

/// `D_s(m)`: monomials of degree `s` disjoint from `m`.
pub fn enumerate_d(m: &Monomial, s: u32, q: u32) -> Result<MonomialSet> {
    enumerate_d_range(m, s, s, q)
}

/// `U_{s,e}(m)`: the union of `U_t(m)` for `s <= t <= e`.
pub fn enumerate_u_range(m: &Monomial, s: u32, e: u32, q: u32) -> Result<MonomialSet> {
    check_monomial(m, q)?;
    let hi = vec![q - 1; m.num_vars()];
    let mut members = BTreeSet::new();
    for t in s..=e {
        for v in bounded_vectors(m.exps(), &hi, m.degree() + t) {
            members.insert(Monomial::new(v));
        }
    }
    Ok(MonomialSet {
        q,
        n: m.num_vars(),
        members,
    })
}

/// `D_{s,e}(m)`: the union of `D_t(m)` for `s <= t <= e`.
pub fn enumerate_d_range(m: &Monomial, s: u32, e: u32, q: u32) -> Result<MonomialSet> {
    check_monomial(m, q)?;
    let lo = vec![0; m.num_vars()];
    let hi: Vec<u32> = m.exps().iter().map(|&x| q - 1 - x).collect();
    let mut members = BTreeSet::new();
    for t in s..=e {
        for v in bounded_vectors(&lo, &hi, t) {
            members.insert(Monomial::new(v));
        }
    }
    Ok(MonomialSet {
        q,
        n: m.num_vars(),
        members,
    })
}

/// `|U_{s,e}(m)|` without materializing the set.
pub fn u_range_size(m: &Monomial, s: u32, e: u32, q: u32) -> u128 {
    // |U_t(m)| = |D_t(m)| = number of vectors with 0 <= x_j <= q-1-e_j summing to t
    let caps: Vec<usize> = m.exps().iter().map(|&x| (q - 1 - x) as usize).collect();
    let top = caps.iter().sum::<usize>();
    let mut ways = vec![0u128; top + 1];
    ways[0] = 1;
    for &c in &caps {
        let mut next = vec![0u128; top + 1];
        for (t, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for x in 0..=c {
                if t + x <= top {
                    next[t + x] += w;
                }
            }
        }
        ways = next;
    }
    (s as usize..=(e as usize).min(top)).map(|t| ways[t]).sum()
}

/// Checks that `rho(m1) = m1 * m` maps `D_s(m)` bijectively onto `U_s(m)`.
pub fn check_bijection(m: &Monomial, s: u32, q: u32) -> Result<bool> {
    let d = enumerate_d(m, s, q)?;
    let u = enumerate_u(m, s, q)?;
    let image: BTreeSet<Monomial> = d.iter().map(|m1| m1.unreduced_mul(m)).collect();
    Ok(image.len() == d.len() && image == u.members)
}

/// `m0 = X_1^{q-1} ... X_u^{q-1} X_{u+1}^v` with `d = (q-1)u + v`, `v < q-1`.
pub fn extremal_monomial(q: u32, n: usize, d: u32) -> Result<Monomial> {
    if !is_prime(u64::from(q)) {
        return Err(Error::NotPrime(u64::from(q)));
    }
    let max = (q - 1) as u64 * n as u64;
    if u64::from(d) > max {
        return Err(Error::Parameter(format!(
            "degree {d} exceeds n(q-1) = {max}"
        )));
    }
    let (u, v) = ((d / (q - 1)) as usize, d % (q - 1));
    let mut exps = vec![0u32; n];
    for e in exps.iter_mut().take(u) {
        *e = q - 1;
    }
    if v > 0 {
        exps[u] = v;
    }
    Ok(Monomial::new(exps))
}

/// All reduced monomials of `P_q(n)` with degree exactly `d`.
pub fn monomials_of_degree(q: u32, n: usize, d: u32) -> Vec<Monomial> {
    bounded_vectors(&vec![0; n], &vec![q - 1; n], d)
        .into_iter()
        .map(Monomial::new)
        .collect()
}

/// Outcome of the exhaustive minimality sweep for `m0`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct UmaxReport {
    pub q: u32,
    pub n: usize,
    /// (m, s) pairs checked for `|U_s(m)| = |D_s(m)|` and the bijection
    pub equinumerous_checks: u64,
    /// (m, s) pairs checked for `|U_s(m0)| <= |U_s(m)|`
    pub minimality_checks: u64,
    /// (m, s, e) triples checked for `|U_{s,e}(m0)| <= |U_{s,e}(m)|`
    pub range_checks: u64,
    pub violations: Vec<String>,
}

impl UmaxReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sweeps every degree `d`, every monomial `m` of degree `d`, and every
/// `s` (and `e >= s`) with `d + s <= n(q-1)`.
pub fn verify_umax(q: u32, n: usize) -> Result<UmaxReport> {
    let top = (q - 1) * n as u32;
    let mut rep = UmaxReport {
        q,
        n,
        ..Default::default()
    };
    for d in 0..=top {
        let m0 = extremal_monomial(q, n, d)?;
        for m in monomials_of_degree(q, n, d) {
            for s in 0..=top - d {
                let u = enumerate_u(&m, s, q)?;
                let dd = enumerate_d(&m, s, q)?;
                rep.equinumerous_checks += 1;
                if u.len() != dd.len() || !check_bijection(&m, s, q)? {
                    rep.violations.push(format!("|U_{s}({m})| != |D_{s}({m})|"));
                }
                rep.minimality_checks += 1;
                if enumerate_u(&m0, s, q)?.len() > u.len() {
                    rep.violations.push(format!("|U_{s}(m0)| > |U_{s}({m})|"));
                }
                for e in s..=top - d {
                    rep.range_checks += 1;
                    let a = enumerate_u_range(&m0, s, e, q)?.len();
                    let b = enumerate_u_range(&m, s, e, q)?.len();
                    if a > b {
                        rep.violations
                            .push(format!("|U_{{{s},{e}}}(m0)| > |U_{{{s},{e}}}({m})|"));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// One row of the `combin` CSV table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinRow {
    pub kind: &'static str,
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub s: u32,
    pub monomial: String,
    pub count: String,
}

/// `N_q(n, d)` for every `d`, then `|U_s(m)|` and `|D_s(m)|` for every
/// monomial `m` and every `s` with `deg(m) + s <= n(q-1)`.
pub fn combin_table(q: u32, n: usize) -> Result<Vec<CombinRow>> {
    if !is_prime(u64::from(q)) {
        return Err(Error::NotPrime(u64::from(q)));
    }
    let top = (q - 1) * n as u32;
    let mut rows = Vec::new();
    for d in 0..=top {
        rows.push(CombinRow {
            kind: "N",
            q,
            n,
            d,
            s: 0,
            monomial: String::new(),
            count: n_q(q, n as i64, i64::from(d)).to_string(),
        });
    }
    for d in 0..=top {
        for m in monomials_of_degree(q, n, d) {
            for s in 0..=top - d {
                for (kind, set) in [("U", enumerate_u(&m, s, q)?), ("D", enumerate_d(&m, s, q)?)] {
                    rows.push(CombinRow {
                        kind,
                        q,
                        n,
                        d,
                        s,
                        monomial: m.to_string(),
                        count: set.len().to_string(),
                    });
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn counts() {
        assert_eq!(n_q(3, 2, 2), 6);
        assert_eq!(n_q(3, -1, 5), 1);
        assert_eq!(n_q(5, -3, 0), 1);
        assert_eq!(n_q(2, 3, -1), 0);
        for n in 0..=6 {
            assert_eq!(n_q(2, n, n), 1 << n);
        }
    }

    #[test]
    fn counts_match_enumeration() {
        for q in [2u32, 3, 5] {
            for n in 0..=6usize {
                if (q as u64).pow(n as u32) > 20_000 {
                    continue;
                }
                let ring = Ring::new(u64::from(q), n).unwrap();
                let degrees = ring.degree_table();
                for d in 0..=(q - 1) * n as u32 {
                    let brute = degrees.iter().filter(|&&x| x <= d).count() as u128;
                    assert_eq!(n_q(q, n as i64, i64::from(d)), brute, "q={q} n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn u_and_d_examples() {
        let m = mono(&[2, 0]);
        let d = enumerate_d(&m, 1, 3).unwrap();
        let u = enumerate_u(&m, 1, 3).unwrap();
        assert_eq!(
            d.members.into_iter().collect::<Vec<_>>(),
            vec![mono(&[0, 1])]
        );
        assert_eq!(
            u.members.into_iter().collect::<Vec<_>>(),
            vec![mono(&[2, 1])]
        );
        let m = mono(&[1, 2, 0]);
        assert_eq!(
            enumerate_d(&m, 0, 3)
                .unwrap()
                .members
                .into_iter()
                .collect::<Vec<_>>(),
            vec![mono(&[0, 0, 0])]
        );
        assert_eq!(
            enumerate_u(&m, 0, 3)
                .unwrap()
                .members
                .into_iter()
                .collect::<Vec<_>>(),
            vec![m.clone()]
        );
        assert!(enumerate_u(&mono(&[3]), 0, 3).is_err());
    }

    #[test]
    fn u_equals_d_over_p3_2() {
        let ring = Ring::new(3, 2).unwrap();
        for idx in 0..ring.size() {
            let m = ring.monomial(idx);
            for s in 0..=4 {
                let u = enumerate_u(&m, s, 3).unwrap();
                assert_eq!(u.len(), enumerate_d(&m, s, 3).unwrap().len());
                assert_eq!(u.len() as u128, u_range_size(&m, s, s, 3));
                assert!(check_bijection(&m, s, 3).unwrap());
            }
        }
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_monomial(3, 2, 3).unwrap(), mono(&[2, 1]));
        assert_eq!(extremal_monomial(3, 4, 3).unwrap(), mono(&[2, 1, 0, 0]));
        assert_eq!(extremal_monomial(5, 3, 0).unwrap(), mono(&[0, 0, 0]));
        assert_eq!(extremal_monomial(2, 3, 3).unwrap(), mono(&[1, 1, 1]));
        assert!(extremal_monomial(2, 3, 4).is_err());
        assert!(extremal_monomial(4, 3, 1).is_err());
    }

    #[test]
    fn umax_small_sweep() {
        for (q, n) in [(2u32, 3usize), (3, 2)] {
            let rep = verify_umax(q, n).unwrap();
            assert!(rep.passed(), "{:?}", rep.violations);
            assert!(rep.range_checks > 0);
        }
    }

    #[test]
    fn counting_lower_bound_for_top_variables() {
        // N_q(L, e) >= q^{floor(e/(q-1))} whenever L >= floor(e/(q-1))
        for q in [2u32, 3, 5] {
            for l in 0..=6i64 {
                for e in 0..=(q as i64 - 1) * 6 {
                    let k = e / (q as i64 - 1);
                    if l >= k {
                        assert!(n_q(q, l, e) >= (q as u128).pow(k as u32));
                    }
                }
            }
        }
    }

    #[test]
    fn table_rows() {
        let rows = combin_table(2, 2).unwrap();
        assert_eq!(rows[0].kind, "N");
        assert_eq!(rows[2].count, "4");
        assert!(rows
            .iter()
            .any(|r| r.kind == "U" && r.monomial == "X1" && r.s == 1 && r.count == "1"));
    }
}
