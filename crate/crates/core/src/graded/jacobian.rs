//! Randomized Jacobian-rank probe for general codimension-two complete
//! intersections.
//!
//! A sampled member with uniform nonzero coefficients over a large prime
//! field stands in for the general member. Each coordinate stratum is
//! examined for points of the affine cone where the 2-row Jacobian drops
//! rank. On strata spanned by one or two variables the question reduces,
//! through the torus action, to a gcd of univariate polynomials and is
//! decided exactly for the sample. On larger strata where some defining
//! restriction vanishes identically, points of the cone are located by
//! fixing all but one coordinate and extracting roots; the rank condition is
//! then evaluated at every located point. Strata where both restrictions
//! survive are smooth for a general member and are not searched.
//!
//! A seed "fails" when a rank-drop witness is found; a family is rejected
//! only when every seed fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Fp, Ring, DEFAULT_PRIME};
use crate::poly::{
    fp_roots, spoly_derivative, spoly_eval, spoly_substitute, spoly_to_uni, upoly_gcd, upoly_mul,
    upoly_sub, SparsePoly, UniPoly,
};

use super::{enumerate_monomials, Monomial, WeightVector};

/// Number of independent samples tried before a family is rejected.
pub const PROBE_SEEDS: u64 = 8;

/// Probe with the default prime and seed count.
pub fn ci_probe_default(w: &WeightVector, d1: u64, d2: u64) -> bool {
    ci_probe(w, d1, d2, DEFAULT_PRIME, PROBE_SEEDS)
}

/// True iff some sampled member has no rank-drop witness on any stratum.
pub fn ci_probe(w: &WeightVector, d1: u64, d2: u64, prime: u64, seeds: u64) -> bool {
    let fp = Fp::new(prime);
    let mons1 = enumerate_monomials(w, d1);
    let mons2 = enumerate_monomials(w, d2);
    if mons1.is_empty() || mons2.is_empty() {
        return false;
    }
    (0..seeds).any(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let f1 = sample_poly(&fp, w.len(), &mons1, &mut rng);
        let f2 = sample_poly(&fp, w.len(), &mons2, &mut rng);
        find_witness(&fp, w, &f1, &f2, &mut rng).is_none()
    })
}

fn sample_poly(
    fp: &Fp,
    nvars: usize,
    monomials: &[Monomial],
    rng: &mut ChaCha8Rng,
) -> SparsePoly<u64> {
    let mut p = SparsePoly::zero(nvars);
    for m in monomials {
        p.terms.insert(m.exponents.clone(), rng.gen_range(1..fp.p));
    }
    p
}

/// Stratum mask of the first rank-drop witness, if any.
pub fn find_witness(
    fp: &Fp,
    w: &WeightVector,
    f1: &SparsePoly<u64>,
    f2: &SparsePoly<u64>,
    rng: &mut ChaCha8Rng,
) -> Option<u32> {
    let n = w.len();
    for mask in 1u32..(1 << n) {
        let r1 = restrict(fp, f1, mask);
        let r2 = restrict(fp, f2, mask);
        let cols1 = jacobian_row(fp, f1, &r1, mask, n);
        let cols2 = jacobian_row(fp, f2, &r2, mask, n);
        let k = mask.count_ones() as usize;
        let hit = if k <= 2 {
            stratum_exact(fp, mask, &r1, &r2, &cols1, &cols2)
        } else {
            let p1 = !r1.is_zero();
            let p2 = !r2.is_zero();
            if p1 && p2 {
                // two surviving restrictions cut the stratum transversally
                // for a general member
                false
            } else {
                stratum_sampled(fp, mask, n, &r1, &r2, &cols1, &cols2, rng)
            }
        };
        if hit {
            return Some(mask);
        }
    }
    None
}

/// Terms supported inside the stratum variables.
fn restrict(_fp: &Fp, f: &SparsePoly<u64>, mask: u32) -> SparsePoly<u64> {
    let mut out = SparsePoly::zero(f.nvars);
    for (e, c) in &f.terms {
        let inside = e
            .iter()
            .enumerate()
            .all(|(i, x)| *x == 0 || mask & (1 << i) != 0);
        if inside {
            out.terms.insert(e.clone(), *c);
        }
    }
    out
}

/// One Jacobian row restricted to the stratum: stratum-variable columns are
/// derivatives of the restriction, external columns are the coefficient
/// polynomials of the monomials linear in that external variable.
fn jacobian_row(
    fp: &Fp,
    f: &SparsePoly<u64>,
    f_restricted: &SparsePoly<u64>,
    mask: u32,
    n: usize,
) -> Vec<SparsePoly<u64>> {
    (0..n)
        .map(|c| {
            if mask & (1 << c) != 0 {
                spoly_derivative(fp, f_restricted, c)
            } else {
                let mut out = SparsePoly::zero(f.nvars);
                for (e, coeff) in &f.terms {
                    if e[c] != 1 {
                        continue;
                    }
                    let inside = e.iter().enumerate().all(|(i, x)| {
                        i == c || *x == 0 || mask & (1 << i) != 0
                    });
                    if inside {
                        let mut e2 = e.clone();
                        e2[c] = 0;
                        out.terms.insert(e2, *coeff);
                    }
                }
                out
            }
        })
        .collect()
}

/// Collapses a polynomial supported on a 1- or 2-variable stratum to a
/// univariate by substituting 1 for the higher variable; orbits of the
/// weighted torus action make the slice lossless on the stratum torus.
fn slice_to_uni(fp: &Fp, p: &SparsePoly<u64>, mask: u32) -> UniPoly<u64> {
    let vars: Vec<usize> = (0..p.nvars).filter(|i| mask & (1 << i) != 0).collect();
    match vars.as_slice() {
        [v] => spoly_to_uni(fp, p, *v),
        [u, v] => spoly_to_uni(fp, &spoly_substitute(fp, p, *v, &1), *u),
        _ => unreachable!("slice is only defined for strata of size <= 2"),
    }
}

/// Exact decision on strata of one or two variables: a witness exists iff
/// the sliced membership and rank equations share a nonzero root.
fn stratum_exact(
    fp: &Fp,
    mask: u32,
    r1: &SparsePoly<u64>,
    r2: &SparsePoly<u64>,
    cols1: &[SparsePoly<u64>],
    cols2: &[SparsePoly<u64>],
) -> bool {
    let mut system: Vec<UniPoly<u64>> = Vec::new();
    for r in [r1, r2] {
        if !r.is_zero() {
            system.push(slice_to_uni(fp, r, mask));
        }
    }
    let row1: Vec<UniPoly<u64>> = cols1.iter().map(|c| slice_to_uni(fp, c, mask)).collect();
    let row2: Vec<UniPoly<u64>> = cols2.iter().map(|c| slice_to_uni(fp, c, mask)).collect();
    let n = row1.len();
    for a in 0..n {
        for b in a + 1..n {
            let m = upoly_sub(
                fp,
                &upoly_mul(fp, &row1[a], &row2[b]),
                &upoly_mul(fp, &row1[b], &row2[a]),
            );
            if !m.is_zero() {
                system.push(m);
            }
        }
    }
    if system.is_empty() {
        // every equation vanishes identically on the stratum
        return true;
    }
    let mut g = system[0].clone();
    for s in &system[1..] {
        g = upoly_gcd(fp, &g, s);
        if g.degree() == Some(0) {
            return false;
        }
    }
    // remove the root at the origin: only torus points count
    let low = g.coeffs.iter().position(|c| *c != 0).unwrap_or(0);
    g.coeffs.len() - low > 1
}

/// Search on strata of three or more variables where at least one defining
/// restriction vanishes: fix all but one stratum coordinate at random,
/// extract roots of the surviving restriction, and test the rank condition
/// at every located point of the cone.
#[allow(clippy::too_many_arguments)]
fn stratum_sampled(
    fp: &Fp,
    mask: u32,
    n: usize,
    r1: &SparsePoly<u64>,
    r2: &SparsePoly<u64>,
    cols1: &[SparsePoly<u64>],
    cols2: &[SparsePoly<u64>],
    rng: &mut ChaCha8Rng,
) -> bool {
    const SLICES: usize = 24;
    let vars: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
    let live = if r1.is_zero() { r2 } else { r1 };
    for trial in 0..SLICES {
        if live.is_zero() {
            // the whole stratum lies on the cone; test a random torus point
            let mut point = vec![0u64; n];
            for v in &vars {
                point[*v] = rng.gen_range(1..fp.p);
            }
            if rank_le_one_at(fp, cols1, cols2, &point) {
                return true;
            }
        } else {
            let sym = vars[trial % vars.len()];
            let mut partial1 = live.clone();
            let mut point = vec![0u64; n];
            for v in &vars {
                if *v != sym {
                    let val = rng.gen_range(1..fp.p);
                    point[*v] = val;
                    partial1 = spoly_substitute(fp, &partial1, *v, &val);
                }
            }
            let uni = spoly_to_uni(fp, &partial1, sym);
            if uni.is_zero() {
                continue;
            }
            for root in fp_roots(fp, &uni.coeffs, rng) {
                if root == 0 {
                    continue;
                }
                point[sym] = root;
                // both defining restrictions must vanish at the point
                if spoly_eval(fp, r1, &point) != 0 || spoly_eval(fp, r2, &point) != 0 {
                    continue;
                }
                if rank_le_one_at(fp, cols1, cols2, &point) {
                    return true;
                }
            }
        }
    }
    false
}

fn rank_le_one_at(fp: &Fp, cols1: &[SparsePoly<u64>], cols2: &[SparsePoly<u64>], point: &[u64]) -> bool {
    let v1: Vec<u64> = cols1.iter().map(|c| spoly_eval(fp, c, point)).collect();
    let v2: Vec<u64> = cols2.iter().map(|c| spoly_eval(fp, c, point)).collect();
    let n = v1.len();
    for a in 0..n {
        for b in a + 1..n {
            let m = fp.sub(&fp.mul(&v1[a], &v2[b]), &fp.mul(&v1[b], &v2[a]));
            if m != 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::WeightVector;

    fn wv(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn accepts_the_quadric_intersection_in_p4() {
        let w = wv(&[1, 1, 1, 1, 1]);
        assert!(ci_probe(&w, 2, 2, DEFAULT_PRIME, 2));
    }

    #[test]
    fn accepts_the_degree_2n_family_for_small_n() {
        for n in 1..=6u64 {
            let w = wv(&[1, 1, n, n, 2 * n - 1]);
            assert!(ci_probe(&w, 2 * n, 2 * n, DEFAULT_PRIME, 2), "rejected n = {n}");
        }
    }

    #[test]
    fn accepts_the_sporadic_6_8_intersection() {
        let w = wv(&[1, 2, 3, 4, 5]);
        assert!(ci_probe(&w, 6, 8, DEFAULT_PRIME, 2));
    }

    #[test]
    fn witness_found_when_a_row_dies_on_a_large_stratum() {
        // f1 = x^2, f2 = y^2 in P^4: on the {z,t,w} stratum both restrictions
        // and both Jacobian rows vanish identically.
        let fp = Fp::new(DEFAULT_PRIME);
        let w = wv(&[1, 1, 1, 1, 1]);
        let mut f1 = SparsePoly::zero(5);
        f1.terms.insert(vec![2, 0, 0, 0, 0], 1);
        let mut f2 = SparsePoly::zero(5);
        f2.terms.insert(vec![0, 2, 0, 0, 0], 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let witness = find_witness(&fp, &w, &f1, &f2, &mut rng);
        assert!(witness.is_some());
    }

    #[test]
    fn witness_found_by_exact_pair_stratum_gcd() {
        // f1 restricted to the (x, y) stratum is the double line (x - y)^2 and
        // the only surviving external column of f2 vanishes on it: every point
        // of {x = y} on the cone drops the Jacobian rank.
        let fp = Fp::new(DEFAULT_PRIME);
        let w = wv(&[1, 1, 1, 1, 1]);
        let mut f1 = SparsePoly::zero(5);
        f1.terms.insert(vec![2, 0, 0, 0, 0], 1);
        f1.terms.insert(vec![1, 1, 0, 0, 0], fp.neg(&2));
        f1.terms.insert(vec![0, 2, 0, 0, 0], 1);
        let mut f2 = SparsePoly::zero(5);
        f2.terms.insert(vec![1, 0, 1, 0, 0], 1);
        f2.terms.insert(vec![0, 1, 1, 0, 0], fp.neg(&1));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let witness = find_witness(&fp, &w, &f1, &f2, &mut rng).unwrap();
        assert_eq!(witness, 0b00011);
    }
}
