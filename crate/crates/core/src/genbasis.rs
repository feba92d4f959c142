//! The ordered univariate basis `b_i(X) = prod_{j<i} (X - xi_j)`, the
//! generalized monomials built from it, and the upper-triangular product
//! decompositions it induces along a chosen variable.

use std::fmt::Write as _;

use crate::algebra::{apply_axis, Field, LineTransform, Polynomial, Ring};
use crate::error::{Error, Result};

/// A listing `xi_0, ..., xi_{q-1}` of the elements of F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldOrdering {
    field: Field,
    xi: Vec<u32>,
}

impl FieldOrdering {
    pub fn new(field: Field, xi: Vec<u32>) -> Result<Self> {
        let q = field.order() as usize;
        let mut seen = vec![false; q];
        if xi.len() != q {
            return Err(Error::Parameter(format!(
                "ordering lists {} elements, field has {q}",
                xi.len()
            )));
        }
        for &x in &xi {
            if x as usize >= q || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::Parameter(format!(
                    "{xi:?} is not a permutation of F_{q}"
                )));
            }
        }
        Ok(FieldOrdering { field, xi })
    }

    /// `0, 1, ..., q-1`.
    pub fn natural(field: Field) -> Self {
        FieldOrdering {
            field,
            xi: (0..field.order()).collect(),
        }
    }

    /// `q-1, ..., 1, 0`.
    pub fn reverse(field: Field) -> Self {
        Self::natural(field).reversed()
    }

    pub fn reversed(&self) -> Self {
        let mut xi = self.xi.clone();
        xi.reverse();
        FieldOrdering {
            field: self.field,
            xi,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn xi(&self) -> &[u32] {
        &self.xi
    }

    /// All `q!` orderings, in lexicographic order. Only sensible for tiny q.
    pub fn all(field: Field) -> Vec<FieldOrdering> {
        fn permute(prefix: &mut Vec<u32>, rest: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                prefix.push(x);
                permute(prefix, rest, out);
                prefix.pop();
                rest.insert(i, x);
            }
        }
        let mut out = Vec::new();
        permute(&mut Vec::new(), &mut (0..field.order()).collect(), &mut out);
        out.into_iter()
            .map(|xi| FieldOrdering { field, xi })
            .collect()
    }
}

/// The basis `b_0..b_{q-1}` for one ordering, with the change-of-basis
/// matrices to and from the monomial basis `1, X, ..., X^{q-1}`.
#[derive(Debug, Clone)]
pub struct UnivariateBasis {
    ordering: FieldOrdering,
    // from_b[r * q + c]: coefficient of X^r in b_c (unit upper triangular)
    from_b: Vec<u32>,
    // to_b[r * q + c]: coefficient of b_r in X^c
    to_b: Vec<u32>,
}

impl UnivariateBasis {
    pub fn new(ordering: &FieldOrdering) -> Self {
        let f = ordering.field;
        let q = f.order() as usize;
        let mut from_b = vec![0u32; q * q];
        // running product, as monomial coefficients
        let mut cur = vec![0u32; q];
        cur[0] = 1;
        for c in 0..q {
            for r in 0..q {
                from_b[r * q + c] = cur[r];
            }
            if c + 1 < q {
                // multiply by (X - xi_c); degree stays below q so nothing wraps
                let xi = ordering.xi[c];
                let mut next = vec![0u32; q];
                for r in 0..q {
                    if cur[r] == 0 {
                        continue;
                    }
                    next[r + 1] = f.add(next[r + 1], cur[r]);
                    next[r] = f.sub(next[r], f.mul(xi, cur[r]));
                }
                cur = next;
            }
        }
        // Invert the unit upper triangular matrix column by column.
        let mut to_b = vec![0u32; q * q];
        for c in 0..q {
            // solve from_b * x = e_c by back substitution
            let mut x = vec![0u32; q];
            for r in (0..q).rev() {
                let mut acc = u32::from(r == c);
                for k in r + 1..q {
                    acc = f.sub(acc, f.mul(from_b[r * q + k], x[k]));
                }
                x[r] = acc;
            }
            for r in 0..q {
                to_b[r * q + c] = x[r];
            }
        }
        UnivariateBasis {
            ordering: ordering.clone(),
            from_b,
            to_b,
        }
    }

    pub fn ordering(&self) -> &FieldOrdering {
        &self.ordering
    }

    /// Monomial coefficients of `b_i`.
    pub fn b_coeffs(&self, i: usize) -> Vec<u32> {
        let q = self.q();
        (0..q).map(|r| self.from_b[r * q + i]).collect()
    }

    /// `b_i(x)`.
    pub fn eval_b(&self, i: usize, x: u32) -> u32 {
        let f = self.ordering.field;
        self.ordering.xi[..i]
            .iter()
            .fold(1, |acc, &xi| f.mul(acc, f.sub(x, xi)))
    }

    fn q(&self) -> usize {
        self.ordering.field.order() as usize
    }

    fn to_b_transform(&self) -> LineTransform {
        LineTransform::from_matrix(self.ordering.field, self.to_b.clone())
    }

    fn from_b_transform(&self) -> LineTransform {
        LineTransform::from_matrix(self.ordering.field, self.from_b.clone())
    }
}

/// `b_0, ..., b_{q-1}` as elements of P_q(1).
pub fn basis_polys(ordering: &FieldOrdering) -> Result<Vec<Polynomial>> {
    let ring = Ring::from_field(ordering.field, 1, u64::MAX)?;
    let basis = UnivariateBasis::new(ordering);
    (0..ring.size())
        .map(|i| Polynomial::from_coeffs(ring, basis.b_coeffs(i)))
        .collect()
}

/// A generalized monomial `prod_j b_{i_j}(X_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedMonomial {
    pub indices: Vec<u32>,
}

impl GeneralizedMonomial {
    pub fn degree(&self) -> u32 {
        self.indices.iter().sum()
    }

    /// Expanded in the monomial basis of `ring`.
    pub fn to_polynomial(&self, ring: Ring, ordering: &FieldOrdering) -> Result<Polynomial> {
        if self.indices.len() != ring.n() || self.indices.iter().any(|&i| i >= ring.q()) {
            return Err(Error::Parameter(format!(
                "generalized monomial {:?} does not fit {ring}",
                self.indices
            )));
        }
        let mut coeffs = vec![0u32; ring.size()];
        coeffs[ring.index_of(&self.indices)] = 1;
        from_generalized(&GeneralizedPoly {
            ring,
            ordering: ordering.clone(),
            coeffs,
        })
    }
}

/// A polynomial written in the generalized-monomial basis; `coeffs` is
/// indexed by the mixed-radix encoding of `(i_1, ..., i_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedPoly {
    pub ring: Ring,
    pub ordering: FieldOrdering,
    pub coeffs: Vec<u32>,
}

impl GeneralizedPoly {
    /// Largest `sum_j i_j` with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| self.ring.degree_of_index(i))
            .max()
    }

    pub fn coeff(&self, indices: &[u32]) -> u32 {
        self.coeffs[self.ring.index_of(indices)]
    }

    /// Lines `(i1,...,in) -> c` for the nonzero coefficients, sorted by
    /// degree and then lexicographically by index tuple.
    pub fn dump(&self) -> String {
        let mut rows: Vec<(u32, Vec<u32>, u32)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let d = self.ring.digits(i);
                (d.iter().sum(), d, c)
            })
            .collect();
        rows.sort();
        let mut out = String::new();
        for (_, idx, c) in rows {
            let tuple: Vec<String> = idx.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "({}) -> {c}", tuple.join(","));
        }
        out
    }
}

fn check_field(ring: &Ring, ordering: &FieldOrdering) -> Result<()> {
    if ring.field() != ordering.field {
        return Err(Error::ParameterMismatch {
            left: ring.to_string(),
            right: format!("ordering over F_{}", ordering.field.order()),
        });
    }
    Ok(())
}

/// Coordinates of `f` in the generalized-monomial basis.
pub fn to_generalized(f: &Polynomial, ordering: &FieldOrdering) -> Result<GeneralizedPoly> {
    let ring = f.ring();
    check_field(&ring, ordering)?;
    let t = UnivariateBasis::new(ordering).to_b_transform();
    let mut coeffs = f.coeffs().to_vec();
    for axis in 0..ring.n() {
        apply_axis(&ring, &mut coeffs, axis, &t);
    }
    Ok(GeneralizedPoly {
        ring,
        ordering: ordering.clone(),
        coeffs,
    })
}

pub fn from_generalized(g: &GeneralizedPoly) -> Result<Polynomial> {
    check_field(&g.ring, &g.ordering)?;
    let t = UnivariateBasis::new(&g.ordering).from_b_transform();
    let mut coeffs = g.coeffs.clone();
    for axis in 0..g.ring.n() {
        apply_axis(&g.ring, &mut coeffs, axis, &t);
    }
    Polynomial::from_coeffs(g.ring, coeffs)
}

/// `gamma[(i * q + j) * q + r]` with `b_i b_j = sum_r gamma^{(r)}_{(i,j)} b_r`
/// in P_q(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    q: usize,
    gamma: Vec<u32>,
}

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize, r: usize) -> u32 {
        self.gamma[(i * self.q + j) * self.q + r]
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `gamma^{(r)}_{(i,j)} = 0` whenever `r < max(i, j)`.
    pub fn is_upper_triangular(&self) -> bool {
        let q = self.q;
        (0..q).all(|i| (0..q).all(|j| (0..i.max(j)).all(|r| self.get(i, j, r) == 0)))
    }
}

pub fn structure_constants(ordering: &FieldOrdering) -> Result<StructureConstants> {
    let b = basis_polys(ordering)?;
    let q = b.len();
    let mut gamma = vec![0u32; q * q * q];
    for i in 0..q {
        for j in 0..q {
            let prod = b[i].mul_reduced(&b[j])?;
            let g = to_generalized(&prod, ordering)?;
            for r in 0..q {
                gamma[(i * q + j) * q + r] = g.coeffs[r];
            }
        }
    }
    Ok(StructureConstants { q, gamma })
}

/// The components `g_0..g_{q-1}` in P_q(n-1) with
/// `g = sum_k b_k(X_var) g_k`.
pub fn components_along(
    g: &Polynomial,
    var: usize,
    ordering: &FieldOrdering,
) -> Result<Vec<Polynomial>> {
    let ring = g.ring();
    check_field(&ring, ordering)?;
    if var >= ring.n() {
        return Err(Error::Parameter(format!(
            "variable index {var} out of range"
        )));
    }
    let sub = ring.drop_var()?;
    let mut coeffs = g.coeffs().to_vec();
    apply_axis(
        &ring,
        &mut coeffs,
        var,
        &UnivariateBasis::new(ordering).to_b_transform(),
    );
    let q = ring.q() as usize;
    let mut parts = vec![vec![0u32; sub.size()]; q];
    let mut digits = vec![0u32; ring.n()];
    for (idx, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        ring.digits_into(idx, &mut digits);
        let k = digits.remove(var) as usize;
        parts[k][sub.index_of(&digits)] = c;
        digits.insert(var, 0);
    }
    parts
        .into_iter()
        .map(|p| Polynomial::from_coeffs(sub, p))
        .collect()
}

/// Inverse of [`components_along`]: `sum_k b_k(X_var) parts[k]`.
pub fn assemble_along(
    ring: Ring,
    var: usize,
    ordering: &FieldOrdering,
    parts: &[Polynomial],
) -> Result<Polynomial> {
    check_field(&ring, ordering)?;
    let sub = ring.drop_var()?;
    let q = ring.q() as usize;
    if parts.len() != q || var >= ring.n() {
        return Err(Error::Parameter(
            "component count or variable out of range".into(),
        ));
    }
    let mut coeffs = vec![0u32; ring.size()];
    for (k, p) in parts.iter().enumerate() {
        sub.ensure_same(&p.ring())?;
        for (idx, &c) in p.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut digits = sub.digits(idx);
            digits.insert(var, k as u32);
            coeffs[ring.index_of(&digits)] = c;
        }
    }
    apply_axis(
        &ring,
        &mut coeffs,
        var,
        &UnivariateBasis::new(ordering).from_b_transform(),
    );
    Polynomial::from_coeffs(ring, coeffs)
}

/// The pieces of the upper-triangular decomposition of `f * P` along one
/// variable: with `f = sum_i b_i f_i` and `P = sum_k b_k Q_k`,
/// `f P = sum_k b_k R_k` where
/// `R_k = Q_k * f|_{X_var = xi_k} + sum_{j<k} Q_j * h_{j,k}` and
/// `h_{j,k} = sum_i alpha_{i,j,k} f_i`, `alpha_{i,j,k} = gamma^{(k)}_{(i,j)}`.
#[derive(Debug, Clone)]
pub struct UtDecomposition {
    pub var: usize,
    pub ordering: FieldOrdering,
    /// `f_i`
    pub f_parts: Vec<Polynomial>,
    /// `Q_k`
    pub q_parts: Vec<Polynomial>,
    /// `f|_{X_var = xi_k} = sum_i b_i(xi_k) f_i`
    pub restrictions: Vec<Polynomial>,
    /// `h[k][j]` for `j < k`
    pub h: Vec<Vec<Polynomial>>,
    /// `R_k`
    pub r_parts: Vec<Polynomial>,
    ring: Ring,
}

impl UtDecomposition {
    /// `sum_k b_k(X_var) R_k`, which equals `f * P`.
    pub fn reassemble(&self) -> Result<Polynomial> {
        assemble_along(self.ring, self.var, &self.ordering, &self.r_parts)
    }
}

pub fn ut_decompose(
    f: &Polynomial,
    p: &Polynomial,
    var: usize,
    ordering: &FieldOrdering,
) -> Result<UtDecomposition> {
    let ring = f.ring();
    ring.ensure_same(&p.ring())?;
    let sub = ring.drop_var()?;
    let field = ring.field();
    let q = ring.q() as usize;
    let gamma = structure_constants(ordering)?;
    let basis = UnivariateBasis::new(ordering);
    let f_parts = components_along(f, var, ordering)?;
    let q_parts = components_along(p, var, ordering)?;

    let combine = |weights: &dyn Fn(usize) -> u32| -> Polynomial {
        let mut acc = Polynomial::zero(sub);
        for (i, fi) in f_parts.iter().enumerate() {
            let w = weights(i);
            if w != 0 {
                acc = &acc + &fi.scale(w);
            }
        }
        acc
    };

    let restrictions: Vec<Polynomial> = (0..q)
        .map(|k| combine(&|i| basis.eval_b(i, ordering.xi[k])))
        .collect();
    let h: Vec<Vec<Polynomial>> = (0..q)
        .map(|k| (0..k).map(|j| combine(&|i| gamma.get(i, j, k))).collect())
        .collect();

    let mut r_parts = Vec::with_capacity(q);
    for k in 0..q {
        let mut acc = q_parts[k].mul_reduced(&restrictions[k])?;
        for j in 0..k {
            acc = &acc + &q_parts[j].mul_reduced(&h[k][j])?;
        }
        r_parts.push(acc);
    }
    debug_assert_eq!(field, sub.field());
    Ok(UtDecomposition {
        var,
        ordering: ordering.clone(),
        f_parts,
        q_parts,
        restrictions,
        h,
        r_parts,
        ring,
    })
}

/// The coefficient tensor relating the b-components of a product
/// `P = prod_i P_i` to products of the components of its factors.
#[derive(Debug, Clone)]
pub struct ProdBasis {
    pub k: usize,
    q: usize,
    /// `beta[r][t]` where `t` is the base-q index of `(j_1, ..., j_k)`
    /// with `j_1` most significant.
    pub beta: Vec<Vec<u32>>,
    /// `Q_{i,j}`: components of each factor.
    pub factor_parts: Vec<Vec<Polynomial>>,
    /// Components of the product, computed directly.
    pub direct: Vec<Polynomial>,
    /// Components of the product, assembled from `beta`.
    pub assembled: Vec<Polynomial>,
}

impl ProdBasis {
    pub fn tuple(&self, mut t: usize) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for slot in out.iter_mut().rev() {
            *slot = t % self.q;
            t /= self.q;
        }
        out
    }

    pub fn diagonal(&self, r: usize) -> u32 {
        let t = (0..self.k).fold(0, |acc, _| acc * self.q + r);
        self.beta[r][t]
    }

    /// `beta^{(r)}_{(r,...,r)} != 0` for every `r`.
    pub fn diagonal_nonzero(&self) -> bool {
        (0..self.q).all(|r| self.diagonal(r) != 0)
    }

    /// `beta^{(r)}_t = 0` unless every entry of `t` is at most `r`.
    pub fn support_is_lower(&self) -> bool {
        (0..self.q).all(|r| {
            self.beta[r]
                .iter()
                .enumerate()
                .all(|(t, &b)| b == 0 || self.tuple(t).iter().all(|&j| j <= r))
        })
    }

    pub fn assembly_matches(&self) -> bool {
        self.direct == self.assembled
    }
}

/// Recurrence for the `beta` tensor of a k-fold product.
pub fn beta_tensor(gamma: &StructureConstants, k: usize) -> Vec<Vec<u32>> {
    let q = gamma.q();
    // k = 1: beta^{(r)}_{(j)} = [j = r]
    let mut beta: Vec<Vec<u32>> = (0..q)
        .map(|r| (0..q).map(|j| u32::from(j == r)).collect())
        .collect();
    let mut width = q;
    for _ in 1..k {
        let mut next = vec![vec![0u32; width * q]; q];
        for (r, row) in next.iter_mut().enumerate() {
            for prev_t in 0..width {
                let max_prev = max_digit(prev_t, q);
                for l in 0..q {
                    let mut acc = 0u64;
                    for j in max_prev..=r {
                        acc += u64::from(gamma.get(j, l, r)) * u64::from(beta[j][prev_t]);
                    }
                    row[prev_t * q + l] = (acc % q as u64) as u32;
                }
            }
        }
        beta = next;
        width *= q;
    }
    beta
}

fn max_digit(mut t: usize, q: usize) -> usize {
    let mut m = 0;
    while t > 0 {
        m = m.max(t % q);
        t /= q;
    }
    m
}

pub fn prod_coeffs(
    factors: &[Polynomial],
    var: usize,
    ordering: &FieldOrdering,
) -> Result<ProdBasis> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Parameter("need at least one factor".into()))?;
    let ring = first.ring();
    let q = ring.q() as usize;
    let k = factors.len();
    let mut product = first.clone();
    for p in &factors[1..] {
        product = product.mul_reduced(p)?;
    }
    let gamma = structure_constants(ordering)?;
    let beta = beta_tensor(&gamma, k);
    let factor_parts = factors
        .iter()
        .map(|p| components_along(p, var, ordering))
        .collect::<Result<Vec<_>>>()?;
    let direct = components_along(&product, var, ordering)?;
    let sub = ring.drop_var()?;
    let mut assembled = Vec::with_capacity(q);
    for (r, row) in beta.iter().enumerate() {
        let mut acc = Polynomial::zero(sub);
        for (t, &b) in row.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let mut idx = t;
            let mut digits = vec![0usize; k];
            for slot in digits.iter_mut().rev() {
                *slot = idx % q;
                idx /= q;
            }
            if digits.iter().any(|&j| j > r) {
                continue;
            }
            let mut term = factor_parts[0][digits[0]].clone();
            for (i, &j) in digits.iter().enumerate().skip(1) {
                term = term.mul_reduced(&factor_parts[i][j])?;
            }
            acc = &acc + &term.scale(b);
        }
        assembled.push(acc);
    }
    Ok(ProdBasis {
        k,
        q,
        beta,
        factor_parts,
        direct,
        assembled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_polynomial, restrict, LinearForm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    fn uni(q: u64, coeffs: &[u32]) -> Polynomial {
        Polynomial::from_coeffs(Ring::new(q, 1).unwrap(), coeffs.to_vec()).unwrap()
    }

    #[test]
    fn basis_over_f3() {
        let b = basis_polys(&FieldOrdering::natural(field(3))).unwrap();
        assert_eq!(b[0], uni(3, &[1, 0, 0]));
        assert_eq!(b[1], uni(3, &[0, 1, 0]));
        // X(X - 1) = X^2 + 2X
        assert_eq!(b[2], uni(3, &[0, 2, 1]));
        let b = basis_polys(&FieldOrdering::natural(field(2))).unwrap();
        assert_eq!(b, vec![uni(2, &[1, 0]), uni(2, &[0, 1])]);
    }

    #[test]
    fn vanishing_pattern_for_every_ordering_of_f5() {
        for ord in FieldOrdering::all(field(5)) {
            let b = basis_polys(&ord).unwrap();
            for (i, bi) in b.iter().enumerate() {
                assert_eq!(bi.degree().finite(), Some(i as u32));
                for (j, &xj) in ord.xi().iter().enumerate() {
                    let v = bi.evaluate(&[xj]).unwrap();
                    assert_eq!(v == 0, j < i, "ordering {:?} b_{i}(xi_{j})", ord.xi());
                }
            }
        }
    }

    #[test]
    fn invalid_orderings() {
        assert!(FieldOrdering::new(field(3), vec![0, 1]).is_err());
        assert!(FieldOrdering::new(field(3), vec![0, 1, 1]).is_err());
        assert!(FieldOrdering::new(field(3), vec![0, 1, 3]).is_err());
        assert_eq!(FieldOrdering::reverse(field(3)).xi(), &[2, 1, 0]);
        assert_eq!(FieldOrdering::all(field(3)).len(), 6);
    }

    #[test]
    fn x_squared_in_the_b_basis() {
        let ord = FieldOrdering::natural(field(3));
        let g = to_generalized(&uni(3, &[0, 0, 1]), &ord).unwrap();
        // X^2 = b_2 + b_1
        assert_eq!(g.coeffs, vec![0, 1, 1]);
        assert_eq!(g.dump(), "(1) -> 1\n(2) -> 1\n");
    }

    #[test]
    fn constants_are_constants() {
        let ring = Ring::new(3, 2).unwrap();
        let ord = FieldOrdering::reverse(field(3));
        let g = to_generalized(&Polynomial::constant(ring, 2), &ord).unwrap();
        assert_eq!(g.coeff(&[0, 0]), 2);
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn generalized_round_trip_and_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (q, n) in [(3u64, 1usize), (2, 2), (3, 2), (5, 2)] {
            let ring = Ring::new(q, n).unwrap();
            for ord in FieldOrdering::all(field(q)).into_iter().take(6) {
                for _ in 0..40 {
                    let e = rand::Rng::gen_range(&mut rng, 0..=ring.max_degree()) as i64;
                    let f = random_polynomial(ring, e, &mut rng).unwrap();
                    let g = to_generalized(&f, &ord).unwrap();
                    assert_eq!(from_generalized(&g).unwrap(), f);
                    assert_eq!(g.degree(), f.degree().finite());
                }
            }
        }
    }

    #[test]
    fn structure_constants_over_f3() {
        let ord = FieldOrdering::natural(field(3));
        let g = structure_constants(&ord).unwrap();
        // b_1 b_1 = X^2 = b_1 + b_2
        assert_eq!(g.get(1, 1, 1), 1);
        assert_eq!(g.get(1, 1, 2), 1);
        assert_eq!(g.get(1, 1, 0), 0);
        let basis = UnivariateBasis::new(&ord);
        for r in 0..3 {
            assert_eq!(g.get(r, r, r), basis.eval_b(r, ord.xi()[r]));
            for j in 0..3 {
                assert_eq!(g.get(0, j, r), u32::from(r == j));
            }
        }
        for ord in FieldOrdering::all(field(3)) {
            let g = structure_constants(&ord).unwrap();
            assert!(g.is_upper_triangular());
            for r in 0..3 {
                assert_ne!(g.get(r, r, r), 0);
            }
        }
    }

    #[test]
    fn structure_constants_reproduce_products_over_f5() {
        let ord = FieldOrdering::new(field(5), vec![3, 0, 4, 1, 2]).unwrap();
        let g = structure_constants(&ord).unwrap();
        let b = basis_polys(&ord).unwrap();
        let ring = b[0].ring();
        for i in 0..5 {
            for j in 0..5 {
                let mut acc = Polynomial::zero(ring);
                for (r, br) in b.iter().enumerate() {
                    acc = &acc + &br.scale(g.get(i, j, r));
                }
                assert_eq!(acc, b[i].mul_reduced(&b[j]).unwrap());
            }
        }
    }

    #[test]
    fn ut_decomposition_with_p_free_of_the_variable() {
        let ring = Ring::new(3, 2).unwrap();
        let ord = FieldOrdering::natural(field(3));
        let f: Polynomial = "q=3 n=2: X1^2*X2 + 2*X2^2 + X1".parse().unwrap();
        let p: Polynomial = "q=3 n=2: 2*X1 + 1".parse().unwrap();
        let d = ut_decompose(&f, &p, 1, &ord).unwrap();
        assert!(d.q_parts[1..].iter().all(Polynomial::is_zero));
        // only Q_0 survives: R_k = Q_0 h_{0,k} for k > 0 and Q_0 f|_{xi_0} for k = 0
        assert_eq!(
            d.r_parts[0],
            d.q_parts[0].mul_reduced(&d.restrictions[0]).unwrap()
        );
        for k in 1..3 {
            assert_eq!(d.r_parts[k], d.q_parts[0].mul_reduced(&d.h[k][0]).unwrap());
        }
        assert_eq!(d.reassemble().unwrap(), f.mul_reduced(&p).unwrap());
        assert_eq!(ring, f.ring());
    }

    #[test]
    fn ut_decomposition_with_constant_f() {
        let ring = Ring::new(3, 2).unwrap();
        let ord = FieldOrdering::natural(field(3));
        let f = Polynomial::constant(ring, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_polynomial(ring, 4, &mut rng).unwrap();
        let d = ut_decompose(&f, &p, 0, &ord).unwrap();
        for k in 0..3 {
            assert_eq!(d.r_parts[k], d.q_parts[k].scale(2));
            for j in 0..k {
                assert!(d.h[k][j].is_zero());
            }
        }
    }

    #[test]
    fn restrictions_match_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ring = Ring::new(5, 2).unwrap();
        let ord = FieldOrdering::new(field(5), vec![2, 4, 1, 0, 3]).unwrap();
        for var in 0..2 {
            let f = random_polynomial(ring, 8, &mut rng).unwrap();
            let p = random_polynomial(ring, 3, &mut rng).unwrap();
            let d = ut_decompose(&f, &p, var, &ord).unwrap();
            for (k, &xi) in ord.xi().iter().enumerate() {
                let direct = restrict(&f, &LinearForm::var(2, var), xi).unwrap();
                assert_eq!(d.restrictions[k], direct);
            }
        }
    }

    #[test]
    fn prod_basis_small_cases() {
        let ord = FieldOrdering::natural(field(3));
        let gamma = structure_constants(&ord).unwrap();
        let b1 = beta_tensor(&gamma, 1);
        for r in 0..3 {
            for j in 0..3 {
                assert_eq!(b1[r][j], u32::from(r == j));
            }
        }
        let b2 = beta_tensor(&gamma, 2);
        for r in 0..3 {
            assert_eq!(b2[r][r * 3 + r], gamma.get(r, r, r));
            assert_ne!(b2[r][r * 3 + r], 0);
        }
    }

    #[test]
    fn prod_basis_assembly_over_f2() {
        let ring = Ring::new(2, 3).unwrap();
        let ord = FieldOrdering::natural(field(2));
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p1 = random_polynomial(ring, 2, &mut rng).unwrap();
            let p2 = random_polynomial(ring, 2, &mut rng).unwrap();
            let pb = prod_coeffs(&[p1, p2], (seed % 3) as usize, &ord).unwrap();
            assert!(pb.assembly_matches());
            assert!(pb.diagonal_nonzero());
            assert!(pb.support_is_lower());
        }
    }
}
