//! Polynomial arithmetic: dense univariate polynomials over any [`Ring`],
//! factorization utilities over prime fields, and exact sparse multivariate
//! polynomials.

use std::collections::BTreeMap;

use rand::Rng;

use crate::field::{poly_divrem_fp, poly_mul_fp, poly_sub_fp, poly_trim_fp, Field, Fp, Ring};

// ---------------------------------------------------------------------------
// Dense univariate polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial, ascending coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<E> {
    pub coeffs: Vec<E>,
}

impl<E> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

pub fn upoly_new<K: Ring>(ring: &K, mut coeffs: Vec<K::El>) -> UniPoly<K::El> {
    while coeffs.last().map_or(false, |c| ring.is_zero(c)) {
        coeffs.pop();
    }
    UniPoly { coeffs }
}

pub fn upoly_constant<K: Ring>(ring: &K, c: K::El) -> UniPoly<K::El> {
    upoly_new(ring, vec![c])
}

pub fn upoly_x<K: Ring>(ring: &K) -> UniPoly<K::El> {
    UniPoly {
        coeffs: vec![ring.zero(), ring.one()],
    }
}

pub fn upoly_add<K: Ring>(ring: &K, a: &UniPoly<K::El>, b: &UniPoly<K::El>) -> UniPoly<K::El> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero());
        let y = b.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.push(ring.add(&x, &y));
    }
    upoly_new(ring, out)
}

pub fn upoly_sub<K: Ring>(ring: &K, a: &UniPoly<K::El>, b: &UniPoly<K::El>) -> UniPoly<K::El> {
    upoly_add(ring, a, &upoly_neg(ring, b))
}

pub fn upoly_neg<K: Ring>(ring: &K, a: &UniPoly<K::El>) -> UniPoly<K::El> {
    UniPoly {
        coeffs: a.coeffs.iter().map(|c| ring.neg(c)).collect(),
    }
}

pub fn upoly_scale<K: Ring>(ring: &K, a: &UniPoly<K::El>, c: &K::El) -> UniPoly<K::El> {
    upoly_new(ring, a.coeffs.iter().map(|x| ring.mul(x, c)).collect())
}

pub fn upoly_mul<K: Ring>(ring: &K, a: &UniPoly<K::El>, b: &UniPoly<K::El>) -> UniPoly<K::El> {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    upoly_new(ring, out)
}

/// Horner evaluation.
pub fn upoly_eval<K: Ring>(ring: &K, a: &UniPoly<K::El>, x: &K::El) -> K::El {
    let mut acc = ring.zero();
    for c in a.coeffs.iter().rev() {
        acc = ring.add(&ring.mul(&acc, x), c);
    }
    acc
}

/// Evaluation through a ring homomorphism `embed` of the coefficients.
pub fn upoly_eval_map<E, L: Ring>(
    target: &L,
    a: &UniPoly<E>,
    x: &L::El,
    embed: impl Fn(&E) -> L::El,
) -> L::El {
    let mut acc = target.zero();
    for c in a.coeffs.iter().rev() {
        acc = target.add(&target.mul(&acc, x), &embed(c));
    }
    acc
}

pub fn upoly_derivative<K: Ring>(ring: &K, a: &UniPoly<K::El>) -> UniPoly<K::El> {
    if a.coeffs.len() <= 1 {
        return UniPoly::zero();
    }
    let out = a
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(c, &ring.from_i64(i as i64)))
        .collect();
    upoly_new(ring, out)
}

/// Euclidean division over a field; panics on zero divisor.
pub fn upoly_divrem<K: Field>(
    ring: &K,
    a: &UniPoly<K::El>,
    b: &UniPoly<K::El>,
) -> (UniPoly<K::El>, UniPoly<K::El>) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let mut rem = a.coeffs.clone();
    if rem.len() < b.coeffs.len() {
        return (UniPoly::zero(), a.clone());
    }
    let mut quo = vec![ring.zero(); rem.len() - b.coeffs.len() + 1];
    let lead_inv = ring.inv(b.coeffs.last().unwrap()).expect("nonzero lead");
    loop {
        while rem.last().map_or(false, |c| ring.is_zero(c)) {
            rem.pop();
        }
        if rem.len() < b.coeffs.len() {
            break;
        }
        let c = ring.mul(rem.last().unwrap(), &lead_inv);
        let shift = rem.len() - b.coeffs.len();
        quo[shift] = c.clone();
        for (i, bc) in b.coeffs.iter().enumerate() {
            rem[shift + i] = ring.sub(&rem[shift + i], &ring.mul(&c, bc));
        }
    }
    (upoly_new(ring, quo), upoly_new(ring, rem))
}

/// Monic gcd over a field.
pub fn upoly_gcd<K: Field>(ring: &K, a: &UniPoly<K::El>, b: &UniPoly<K::El>) -> UniPoly<K::El> {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let (_, r) = upoly_divrem(ring, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if r0.is_zero() {
        return r0;
    }
    let li = ring.inv(r0.coeffs.last().unwrap()).unwrap();
    upoly_scale(ring, &r0, &li)
}

// ---------------------------------------------------------------------------
// Factorization over F_p (dense Vec<u64> representation)
// ---------------------------------------------------------------------------

fn fp_gcd(fp: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    while !r1.is_empty() {
        let (_, r) = poly_divrem_fp(fp, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if let Some(lead) = r0.last().copied() {
        let li = fp.inv(&lead).unwrap();
        r0 = r0.iter().map(|c| fp.mul(c, &li)).collect();
    }
    poly_trim_fp(r0)
}

fn fp_pow_mod(fp: &Fp, base: &[u64], mut e: u128, modulus: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_divrem_fp(fp, base, modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_divrem_fp(fp, &poly_mul_fp(fp, &acc, &b), modulus).1;
        }
        b = poly_divrem_fp(fp, &poly_mul_fp(fp, &b, &b), modulus).1;
        e >>= 1;
    }
    acc
}

/// Distinct-degree factorization of a squarefree monic `f`:
/// returns `(d, product of all irreducible factors of degree d)`.
pub fn fp_distinct_degree(fp: &Fp, f: &[u64]) -> Vec<(usize, Vec<u64>)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = vec![0u64, 1]; // x
    let mut d = 0usize;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            // remainder is irreducible
            out.push((rest.len() - 1, rest));
            break;
        }
        h = fp_pow_mod(fp, &h, fp.p as u128, &rest);
        let hx = poly_sub_fp(fp, &h, &[0, 1]);
        let g = fp_gcd(fp, &hx, &rest);
        if g.len() > 1 {
            out.push((d, g.clone()));
            rest = poly_divrem_fp(fp, &rest, &g).0;
            h = poly_divrem_fp(fp, &h, &rest).1;
        }
    }
    out
}

/// Cantor-Zassenhaus: splits a product of same-degree irreducibles.
fn fp_equal_degree_split(fp: &Fp, f: &[u64], d: usize, rng: &mut impl Rng) -> Vec<Vec<u64>> {
    if f.len() - 1 == d {
        return vec![f.to_vec()];
    }
    let exp = (num_bigint::BigUint::from(fp.p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let r: Vec<u64> = (0..f.len() - 1).map(|_| rng.gen_range(0..fp.p)).collect();
        let r = poly_trim_fp(r);
        if r.len() <= 1 {
            continue;
        }
        let mut pw = vec![1u64];
        // r^exp mod f with big exponent
        let mut base = poly_divrem_fp(fp, &r, f).1;
        for i in 0..exp.bits() {
            if exp.bit(i) {
                pw = poly_divrem_fp(fp, &poly_mul_fp(fp, &pw, &base), f).1;
            }
            base = poly_divrem_fp(fp, &poly_mul_fp(fp, &base, &base), f).1;
        }
        let g = fp_gcd(fp, &poly_sub_fp(fp, &pw, &[1]), f);
        if g.len() > 1 && g.len() < f.len() {
            let rest = poly_divrem_fp(fp, f, &g).0;
            let mut parts = fp_equal_degree_split(fp, &g, d, rng);
            parts.extend(fp_equal_degree_split(fp, &rest, d, rng));
            return parts;
        }
    }
}

/// Squarefree part of `f`.
pub fn fp_squarefree(fp: &Fp, f: &[u64]) -> Vec<u64> {
    let deriv: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| fp.mul(c, &(i as u64 % fp.p)))
        .collect();
    let deriv = poly_trim_fp(deriv);
    if deriv.is_empty() {
        // perfect p-th power; irrelevant at our degrees (< p)
        return f.to_vec();
    }
    let g = fp_gcd(fp, f, &deriv);
    let sf = poly_divrem_fp(fp, f, &g).0;
    let li = fp.inv(sf.last().unwrap()).unwrap();
    sf.iter().map(|c| fp.mul(c, &li)).collect()
}

/// One irreducible factor of minimal degree of a nonconstant `f`, monic.
pub fn fp_min_degree_factor(fp: &Fp, f: &[u64], rng: &mut impl Rng) -> Vec<u64> {
    assert!(f.len() > 1, "constant polynomial has no factors");
    let sf = fp_squarefree(fp, f);
    let ddf = fp_distinct_degree(fp, &sf);
    let (d, block) = ddf
        .iter()
        .min_by_key(|(d, _)| *d)
        .expect("nonconstant polynomial");
    let parts = fp_equal_degree_split(fp, block, *d, rng);
    parts.into_iter().min().unwrap()
}

/// All roots of `f` in `F_p`.
pub fn fp_roots(fp: &Fp, f: &[u64], rng: &mut impl Rng) -> Vec<u64> {
    if f.len() <= 1 {
        return vec![];
    }
    let sf = fp_squarefree(fp, f);
    // gcd(x^p - x, f) isolates the linear part
    let xp = fp_pow_mod(fp, &[0, 1], fp.p as u128, &sf);
    let lin = fp_gcd(fp, &poly_sub_fp(fp, &xp, &[0, 1]), &sf);
    if lin.len() <= 1 {
        return vec![];
    }
    let mut roots: Vec<u64> = fp_equal_degree_split(fp, &lin, 1, rng)
        .into_iter()
        .map(|l| fp.neg(&l[0])) // monic x + c
        .collect();
    roots.sort_unstable();
    roots
}

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials
// ---------------------------------------------------------------------------

/// Exact sparse multivariate polynomial; no zero coefficients are stored, and
/// term iteration order is the lexicographic order of exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<E> {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, E>,
}

impl<E> SparsePoly<E> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Weighted degree against `weights`; `None` for the zero polynomial.
    pub fn weighted_degree(&self, weights: &[u64]) -> Option<u64> {
        assert_eq!(weights.len(), self.nvars);
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .zip(weights)
                    .map(|(x, w)| *x as u64 * w)
                    .sum::<u64>()
            })
            .max()
    }

    pub fn is_quasi_homogeneous(&self, weights: &[u64]) -> bool {
        let mut degs = self.terms.keys().map(|e| {
            e.iter()
                .zip(weights)
                .map(|(x, w)| *x as u64 * w)
                .sum::<u64>()
        });
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }
}

pub fn spoly_term<K: Ring>(ring: &K, nvars: usize, exps: Vec<u32>, coeff: K::El) -> SparsePoly<K::El> {
    assert_eq!(exps.len(), nvars);
    let mut p = SparsePoly::zero(nvars);
    if !ring.is_zero(&coeff) {
        p.terms.insert(exps, coeff);
    }
    p
}

pub fn spoly_add<K: Ring>(ring: &K, a: &SparsePoly<K::El>, b: &SparsePoly<K::El>) -> SparsePoly<K::El> {
    assert_eq!(a.nvars, b.nvars);
    let mut out = a.clone();
    for (e, c) in &b.terms {
        match out.terms.get_mut(e) {
            Some(existing) => {
                let s = ring.add(existing, c);
                if ring.is_zero(&s) {
                    out.terms.remove(e);
                } else {
                    *existing = s;
                }
            }
            None => {
                out.terms.insert(e.clone(), c.clone());
            }
        }
    }
    out
}

pub fn spoly_neg<K: Ring>(ring: &K, a: &SparsePoly<K::El>) -> SparsePoly<K::El> {
    SparsePoly {
        nvars: a.nvars,
        terms: a.terms.iter().map(|(e, c)| (e.clone(), ring.neg(c))).collect(),
    }
}

pub fn spoly_sub<K: Ring>(ring: &K, a: &SparsePoly<K::El>, b: &SparsePoly<K::El>) -> SparsePoly<K::El> {
    spoly_add(ring, a, &spoly_neg(ring, b))
}

pub fn spoly_mul<K: Ring>(ring: &K, a: &SparsePoly<K::El>, b: &SparsePoly<K::El>) -> SparsePoly<K::El> {
    assert_eq!(a.nvars, b.nvars);
    let mut out = SparsePoly::zero(a.nvars);
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ring.mul(ca, cb);
            if ring.is_zero(&c) {
                continue;
            }
            match out.terms.get_mut(&e) {
                Some(existing) => {
                    let s = ring.add(existing, &c);
                    if ring.is_zero(&s) {
                        out.terms.remove(&e);
                    } else {
                        *existing = s;
                    }
                }
                None => {
                    out.terms.insert(e, c);
                }
            }
        }
    }
    out
}

/// Partial derivative with respect to variable `var`.
pub fn spoly_derivative<K: Ring>(ring: &K, a: &SparsePoly<K::El>, var: usize) -> SparsePoly<K::El> {
    let mut out = SparsePoly::zero(a.nvars);
    for (e, c) in &a.terms {
        if e[var] == 0 {
            continue;
        }
        let mut e2 = e.clone();
        e2[var] -= 1;
        let c2 = ring.mul(c, &ring.from_i64(e[var] as i64));
        if ring.is_zero(&c2) {
            continue;
        }
        let entry = out.terms.entry(e2).or_insert_with(|| ring.zero());
        *entry = ring.add(entry, &c2);
        // merged exponents cannot collide here, but keep the zero guard uniform
    }
    out.terms.retain(|_, c| !ring.is_zero(c));
    out
}

/// Substitutes `value` for variable `var`; the variable remains in the
/// exponent vector with exponent 0.
pub fn spoly_substitute<K: Ring>(
    ring: &K,
    a: &SparsePoly<K::El>,
    var: usize,
    value: &K::El,
) -> SparsePoly<K::El> {
    let mut out = SparsePoly::zero(a.nvars);
    for (e, c) in &a.terms {
        let mut pw = ring.one();
        for _ in 0..e[var] {
            pw = ring.mul(&pw, value);
        }
        let c2 = ring.mul(c, &pw);
        if ring.is_zero(&c2) {
            continue;
        }
        let mut e2 = e.clone();
        e2[var] = 0;
        match out.terms.get_mut(&e2) {
            Some(existing) => {
                let s = ring.add(existing, &c2);
                if ring.is_zero(&s) {
                    out.terms.remove(&e2);
                } else {
                    *existing = s;
                }
            }
            None => {
                out.terms.insert(e2, c2);
            }
        }
    }
    out
}

/// Full evaluation at a point.
pub fn spoly_eval<K: Ring>(ring: &K, a: &SparsePoly<K::El>, point: &[K::El]) -> K::El {
    assert_eq!(point.len(), a.nvars);
    let mut acc = ring.zero();
    for (e, c) in &a.terms {
        let mut t = c.clone();
        for (x, p) in e.iter().zip(point) {
            for _ in 0..*x {
                t = ring.mul(&t, p);
            }
        }
        acc = ring.add(&acc, &t);
    }
    acc
}

/// Collapses to a dense univariate polynomial in `var`; every other variable
/// must have exponent 0 everywhere.
pub fn spoly_to_uni<K: Ring>(ring: &K, a: &SparsePoly<K::El>, var: usize) -> UniPoly<K::El> {
    let deg = a.terms.keys().map(|e| e[var]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![ring.zero(); deg + 1];
    for (e, c) in &a.terms {
        for (i, x) in e.iter().enumerate() {
            assert!(i == var || *x == 0, "polynomial is not univariate in the requested variable");
        }
        coeffs[e[var] as usize] = ring.add(&coeffs[e[var] as usize], c);
    }
    upoly_new(ring, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q, DEFAULT_PRIME};
    use crate::rat::rat_i;
    use rand::SeedableRng;

    #[test]
    fn divrem_and_gcd_over_q() {
        // (x^2 - 1) / (x - 1) = x + 1
        let a = upoly_new(&Q, vec![rat_i(-1), rat_i(0), rat_i(1)]);
        let b = upoly_new(&Q, vec![rat_i(-1), rat_i(1)]);
        let (q, r) = upoly_divrem(&Q, &a, &b);
        assert!(r.is_zero());
        assert_eq!(q.coeffs, vec![rat_i(1), rat_i(1)]);
        let g = upoly_gcd(&Q, &a, &b);
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn fp_roots_of_quadratic() {
        let fp = Fp::new(DEFAULT_PRIME);
        // (x - 3)(x - 7) = x^2 - 10x + 21
        let f = vec![21, fp.neg(&10), 1];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert_eq!(fp_roots(&fp, &f, &mut rng), vec![3, 7]);
    }

    #[test]
    fn min_degree_factor_is_irreducible_divisor() {
        let fp = Fp::new(7);
        // x^2 + 1 irreducible mod 7; (x^2+1)(x-2) has min factor x - 2
        let f = poly_mul_fp(&fp, &[1, 0, 1], &[5, 1]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let h = fp_min_degree_factor(&fp, &f, &mut rng);
        assert_eq!(h, vec![5, 1]);
        // and a pure irreducible returns itself
        let h2 = fp_min_degree_factor(&fp, &[1, 0, 1], &mut rng);
        assert_eq!(h2, vec![1, 0, 1]);
    }

    #[test]
    fn sparse_weighted_degree_and_quasi_homogeneity() {
        // x^3 z w with mixed weights
        let mut p = SparsePoly::zero(3);
        p.terms.insert(vec![3, 1, 0], rat_i(2));
        p.terms.insert(vec![0, 0, 2], rat_i(-1));
        assert_eq!(p.weighted_degree(&[1, 3, 3]), Some(6));
        assert!(p.is_quasi_homogeneous(&[1, 3, 3]));
        assert!(!p.is_quasi_homogeneous(&[1, 1, 1]));
    }
}
