//! Integer and monomial arithmetic for weighted gradings: monomial
//! enumeration, well-formedness, quasi-smoothness, linear-cone and index
//! tests for weighted hypersurfaces and codimension-two complete
//! intersections.
//!
//! Quasi-smoothness of a general member is decided combinatorially. For a
//! hypersurface the subset criterion is exact: for every nonempty variable
//! subset `I`, either a monomial of the defining degree lives purely in the
//! variables of `I`, or there are `|I|` monomials of the form
//! `(monomial in I) * x_e` with `|I|` distinct external indices `e`. For a
//! complete intersection the analogous subset conditions are necessary
//! filters only; survivors go through a randomized Jacobian-rank probe over
//! a large prime field (see [`jacobian`]).

pub mod jacobian;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("weights must have length 4 or 5, got {0}")]
    BadWeightLength(usize),
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("degrees must have length 1 or 2, got {0}")]
    BadDegreeLength(usize),
    #[error("degrees must be positive")]
    NonPositiveDegree,
}

/// Ascending weights of the ambient weighted projective space, length 4 or 5.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    weights: Vec<u64>,
}

impl WeightVector {
    /// Builds a weight vector; the input is sorted ascending.
    pub fn new(mut weights: Vec<u64>) -> Result<Self, GradedError> {
        if weights.len() != 4 && weights.len() != 5 {
            return Err(GradedError::BadWeightLength(weights.len()));
        }
        if weights.iter().any(|w| *w == 0) {
            return Err(GradedError::NonPositiveWeight);
        }
        weights.sort_unstable();
        Ok(WeightVector { weights })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn product(&self) -> u64 {
        self.weights.iter().product()
    }

    /// Variable names in the notational convention: x, y, z, t for four
    /// weights and x, y, z, t, w for five.
    pub fn var_names(&self) -> &'static [&'static str] {
        if self.len() == 4 {
            &["x", "y", "z", "t"]
        } else {
            &["x", "y", "z", "t", "w"]
        }
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Defining degrees: one for a hypersurface, two (ascending) for a
/// codimension-two complete intersection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSpec {
    degrees: Vec<u64>,
}

impl DegreeSpec {
    pub fn new(mut degrees: Vec<u64>) -> Result<Self, GradedError> {
        if degrees.is_empty() || degrees.len() > 2 {
            return Err(GradedError::BadDegreeLength(degrees.len()));
        }
        if degrees.iter().any(|d| *d == 0) {
            return Err(GradedError::NonPositiveDegree);
        }
        degrees.sort_unstable();
        Ok(DegreeSpec { degrees })
    }

    pub fn hypersurface(d: u64) -> Result<Self, GradedError> {
        Self::new(vec![d])
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().sum()
    }

    pub fn product(&self) -> u64 {
        self.degrees.iter().product()
    }
}

impl std::fmt::Display for DegreeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Exponent vector of a monomial in the ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn weighted_degree(&self, w: &WeightVector) -> u64 {
        self.exponents
            .iter()
            .zip(w.weights())
            .map(|(e, a)| *e as u64 * a)
            .sum()
    }

    /// Renders like `x^3`, `x*y`, `z`.
    pub fn render(&self, w: &WeightVector) -> String {
        let names = w.var_names();
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    names[i].to_string()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials of weighted degree exactly `d`, in descending lexicographic
/// exponent order; empty for unrepresentable `d`.
pub fn enumerate_monomials(w: &WeightVector, d: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; w.len()];
    fn rec(weights: &[u64], pos: usize, remaining: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == weights.len() {
            if remaining == 0 {
                out.push(Monomial { exponents: exps.clone() });
            }
            return;
        }
        if pos + 1 == weights.len() {
            if remaining % weights[pos] == 0 {
                exps[pos] = (remaining / weights[pos]) as u32;
                out.push(Monomial { exponents: exps.clone() });
                exps[pos] = 0;
            }
            return;
        }
        let max = remaining / weights[pos];
        for e in (0..=max).rev() {
            exps[pos] = e as u32;
            rec(weights, pos + 1, remaining - e * weights[pos], exps, out);
        }
        exps[pos] = 0;
    }
    rec(w.weights(), 0, d, &mut exps, &mut out);
    out
}

/// Σ weights − Σ degrees; the amplitude of the anticanonical class.
pub fn index(w: &WeightVector, deg: &DegreeSpec) -> i64 {
    w.sum() as i64 - deg.sum() as i64
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// True iff dropping any single weight leaves a coprime set.
pub fn ambient_well_formed(w: &WeightVector) -> bool {
    let ws = w.weights();
    for skip in 0..ws.len() {
        let mut g = 0u64;
        for (i, a) in ws.iter().enumerate() {
            if i != skip {
                g = gcd(g, *a);
            }
        }
        if g != 1 {
            return false;
        }
    }
    true
}

/// Is some nonnegative combination of `weights` equal to `target`?
pub(crate) fn representable(weights: &[u64], target: i64) -> bool {
    if target < 0 {
        return false;
    }
    let target = target as u64;
    match weights {
        [] => target == 0,
        [a] => target % a == 0,
        [rest @ .., last] => {
            let mut t = target;
            loop {
                if representable(rest, t as i64) {
                    return true;
                }
                if t < *last {
                    return false;
                }
                t -= last;
            }
        }
    }
}

/// Counts monomials of degree `target` in `weights`, capped at `cap`.
pub(crate) fn count_representations(weights: &[u64], target: i64, cap: usize) -> usize {
    if target < 0 || cap == 0 {
        return 0;
    }
    let target = target as u64;
    match weights {
        [] => usize::from(target == 0),
        [a] => usize::from(target % a == 0),
        [rest @ .., last] => {
            let mut total = 0;
            let mut t = target;
            loop {
                total += count_representations(rest, t as i64, cap - total);
                if total >= cap || t < *last {
                    return total.min(cap);
                }
                t -= last;
            }
        }
    }
}

fn subset_weights(w: &WeightVector, mask: u32) -> Vec<u64> {
    w.weights()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, a)| *a)
        .collect()
}

/// Well-formedness of the general member: the ambient is well-formed and the
/// surface meets the singular strata of the ambient in dimension zero only.
/// Each stabilized coordinate stratum is tested through monomial existence.
pub fn surface_well_formed(w: &WeightVector, deg: &DegreeSpec) -> bool {
    if !ambient_well_formed(w) {
        return false;
    }
    let ws = w.weights();
    let n = ws.len();
    match deg.len() {
        1 => {
            let d = deg.degrees()[0] as i64;
            // A stabilized pair stratum is a curve in the ambient; the
            // surface must not contain it.
            for i in 0..n {
                for j in i + 1..n {
                    if gcd(ws[i], ws[j]) > 1 && !representable(&[ws[i], ws[j]], d) {
                        return false;
                    }
                }
            }
            // Stabilized triples are excluded by ambient well-formedness.
            true
        }
        2 => {
            let d1 = deg.degrees()[0] as i64;
            let d2 = deg.degrees()[1] as i64;
            for i in 0..n {
                for j in i + 1..n {
                    let pair = [ws[i], ws[j]];
                    if gcd(ws[i], ws[j]) > 1
                        && !representable(&pair, d1)
                        && !representable(&pair, d2)
                    {
                        // both restrictions vanish: the surface contains the
                        // stabilized curve stratum
                        return false;
                    }
                    for k in j + 1..n {
                        let triple = [ws[i], ws[j], ws[k]];
                        let g = gcd(gcd(ws[i], ws[j]), ws[k]);
                        if g > 1
                            && !(representable(&triple, d1) && representable(&triple, d2))
                        {
                            // the intersection with the stabilized plane
                            // stratum has dimension >= 1
                            return false;
                        }
                    }
                }
            }
            true
        }
        _ => unreachable!(),
    }
}

/// True iff some defining degree equals some weight.
pub fn is_linear_cone(w: &WeightVector, deg: &DegreeSpec) -> bool {
    deg.degrees()
        .iter()
        .any(|d| w.weights().contains(d))
}

/// Subset criterion for the general hypersurface; exact.
fn quasi_smooth_hypersurface(w: &WeightVector, d: u64) -> bool {
    let n = w.len();
    let ws = w.weights();
    for mask in 1u32..(1 << n) {
        let sub = subset_weights(w, mask);
        if representable(&sub, d as i64) {
            continue;
        }
        let need = mask.count_ones() as usize;
        let mut reachable = 0usize;
        for (e, a) in ws.iter().enumerate() {
            if mask & (1 << e) != 0 {
                continue;
            }
            if representable(&sub, d as i64 - *a as i64) {
                reachable += 1;
                if reachable >= need {
                    break;
                }
            }
        }
        if reachable < need {
            return false;
        }
    }
    true
}

/// Necessary combinatorial conditions for quasi-smoothness of the general
/// codimension-two complete intersection. Sound to reject on failure; not
/// sufficient on success.
pub(crate) fn quasi_smooth_ci_filters(w: &WeightVector, d1: u64, d2: u64) -> bool {
    let n = w.len();
    let ws = w.weights();
    for mask in 1u32..(1 << n) {
        let sub = subset_weights(w, mask);
        let p1 = representable(&sub, d1 as i64);
        let p2 = representable(&sub, d2 as i64);
        if p1 && p2 {
            continue;
        }
        let externals = |d: u64| -> Vec<usize> {
            (0..n)
                .filter(|e| mask & (1 << e) == 0)
                .filter(|e| representable(&sub, d as i64 - ws[*e] as i64))
                .collect()
        };
        if p1 != p2 {
            let (da, db) = if p1 { (d1, d2) } else { (d2, d1) };
            // the nonvanishing restriction is a single monomial: the stratum
            // misses the surface
            if count_representations(&sub, da as i64, 2) == 1 {
                continue;
            }
            if externals(db).is_empty() {
                return false;
            }
        } else {
            // the whole stratum lies on the surface: two distinct external
            // directions must be covered, one for each defining polynomial
            let e1 = externals(d1);
            let e2 = externals(d2);
            if e1.is_empty() || e2.is_empty() {
                return false;
            }
            if e1.len() == 1 && e2.len() == 1 && e1 == e2 {
                return false;
            }
        }
    }
    true
}

/// Quasi-smoothness of the general member. Exact for hypersurfaces; for
/// complete intersections the combinatorial filters are backed by the
/// randomized Jacobian probe with its default seeds.
pub fn quasi_smooth_general(w: &WeightVector, deg: &DegreeSpec) -> bool {
    match deg.len() {
        1 => quasi_smooth_hypersurface(w, deg.degrees()[0]),
        2 => {
            let d1 = deg.degrees()[0];
            let d2 = deg.degrees()[1];
            quasi_smooth_ci_filters(w, d1, d2) && jacobian::ci_probe_default(w, d1, d2)
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn ds(v: &[u64]) -> DegreeSpec {
        DegreeSpec::new(v.to_vec()).unwrap()
    }

    #[test]
    fn monomials_of_degree_three_in_1235() {
        let w = wv(&[1, 2, 3, 5]);
        let ms = enumerate_monomials(&w, 3);
        let rendered: Vec<String> = ms.iter().map(|m| m.render(&w)).collect();
        assert_eq!(rendered, vec!["x^3", "x*y", "z"]);
    }

    #[test]
    fn monomials_of_degree_five_in_1357() {
        let w = wv(&[1, 3, 5, 7]);
        let ms = enumerate_monomials(&w, 5);
        let rendered: Vec<String> = ms.iter().map(|m| m.render(&w)).collect();
        assert_eq!(rendered, vec!["x^5", "x^2*y", "z"]);
    }

    #[test]
    fn degree_zero_gives_constant() {
        let w = wv(&[2, 3, 5, 7]);
        let ms = enumerate_monomials(&w, 0);
        assert_eq!(ms.len(), 1);
        assert!(ms[0].exponents.iter().all(|e| *e == 0));
    }

    #[test]
    fn unrepresentable_degree_gives_empty_list() {
        let w = wv(&[2, 4, 6, 8]);
        assert!(enumerate_monomials(&w, 5).is_empty());
        assert!(enumerate_monomials(&w, 1).is_empty());
    }

    #[test]
    fn every_enumerated_monomial_has_the_requested_degree() {
        let w = wv(&[1, 2, 3, 5]);
        for d in 0..25 {
            for m in enumerate_monomials(&w, d) {
                assert_eq!(m.weighted_degree(&w), d);
            }
        }
    }

    // Brute-force oracle: nested exponent loops bounded by d / min weight.
    fn count_brute(ws: &[u64], d: u64) -> usize {
        fn rec(ws: &[u64], d: i64) -> usize {
            match ws {
                [] => usize::from(d == 0),
                [a, rest @ ..] => {
                    let mut total = 0;
                    let mut t = d;
                    while t >= 0 {
                        total += rec(rest, t);
                        t -= *a as i64;
                    }
                    total
                }
            }
        }
        rec(ws, d as i64)
    }

    #[test]
    fn enumeration_cardinality_matches_brute_force() {
        for (ws, dmax) in [(vec![1u64, 2, 3, 5], 22), (vec![1, 1, 2, 2, 3], 12)] {
            let w = wv(&ws);
            for d in 0..=dmax {
                assert_eq!(
                    enumerate_monomials(&w, d).len(),
                    count_brute(&ws, d),
                    "cardinality mismatch for {ws:?} at degree {d}"
                );
            }
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(&wv(&[1, 2, 3, 5]), &ds(&[10])), 1);
        assert_eq!(index(&wv(&[2, 2, 3, 3, 3]), &ds(&[6, 6])), 1);
        assert_eq!(index(&wv(&[1, 1, 1, 1]), &ds(&[4])), 0);
    }

    #[test]
    fn index_invariant_under_permutation() {
        // the constructor sorts, so any permutation yields the same value
        let a = WeightVector::new(vec![5, 1, 3, 2]).unwrap();
        let b = WeightVector::new(vec![1, 2, 3, 5]).unwrap();
        assert_eq!(a, b);
        let da = DegreeSpec::new(vec![8, 6]).unwrap();
        let db = DegreeSpec::new(vec![6, 8]).unwrap();
        assert_eq!(da, db);
    }

    #[test]
    fn ambient_well_formedness_examples() {
        for n in 1..=10u64 {
            assert!(ambient_well_formed(&wv(&[1, 1, n, n, 2 * n - 1])));
        }
        assert!(ambient_well_formed(&wv(&[1, 1, 1, 1])));
        assert!(!ambient_well_formed(&wv(&[2, 2, 4, 6])));
    }

    #[test]
    fn ambient_well_formedness_brute_force_oracle() {
        // gcd over all 3-subsets, computed independently
        let cases = [vec![2u64, 2, 4, 6], vec![1, 2, 4, 8], vec![2, 3, 4, 5]];
        for ws in cases {
            let w = wv(&ws);
            let mut ok = true;
            for i in 0..4 {
                for j in i + 1..4 {
                    for k in j + 1..4 {
                        let g = gcd(gcd(ws[i], ws[j]), ws[k]);
                        if g != 1 {
                            ok = false;
                        }
                    }
                }
            }
            assert_eq!(ambient_well_formed(&w), ok, "mismatch for {ws:?}");
        }
    }

    #[test]
    fn surface_well_formedness_examples() {
        assert!(surface_well_formed(&wv(&[1, 2, 3, 5]), &ds(&[10])));
        // no degree-9 monomial in the (2,4) pair: the surface contains the
        // stabilized line
        assert!(!surface_well_formed(&wv(&[1, 2, 3, 4]), &ds(&[9])));
        assert!(surface_well_formed(&wv(&[1, 1, 1, 1, 1]), &ds(&[2, 2])));
    }

    #[test]
    fn surface_well_formedness_monomial_oracle() {
        // cross-check the (1,2,3,4; 9) rejection by enumerating monomials of
        // degree 9 supported on the {y, t} axis pair
        let w = wv(&[1, 2, 3, 4]);
        let live: Vec<Monomial> = enumerate_monomials(&w, 9)
            .into_iter()
            .filter(|m| m.exponents[0] == 0 && m.exponents[2] == 0)
            .collect();
        assert!(live.is_empty());
    }

    #[test]
    fn quasi_smoothness_hypersurface_examples() {
        assert!(quasi_smooth_general(&wv(&[1, 1, 1, 1]), &ds(&[3])));
        assert!(!quasi_smooth_general(&wv(&[1, 3, 4, 5]), &ds(&[12])));
        assert!(quasi_smooth_general(&wv(&[1, 2, 3, 5]), &ds(&[10])));
        assert!(quasi_smooth_general(&wv(&[1, 3, 5, 7]), &ds(&[15])));
    }

    #[test]
    fn quasi_smoothness_rejection_has_monomial_witness() {
        // (1,3,4,5; 12): no monomial t^m or t^m * (other variable)
        let w = wv(&[1, 3, 4, 5]);
        for m in enumerate_monomials(&w, 12) {
            if m.exponents[3] == 0 {
                continue;
            }
            let other: u32 = m.exponents[..3].iter().sum();
            assert!(other != 0, "pure power of t exists: {m:?}");
            assert!(other != 1, "tangent monomial at the t vertex exists: {m:?}");
        }
    }

    #[test]
    fn linear_cone_examples() {
        assert!(!is_linear_cone(&wv(&[1, 2, 3, 5]), &ds(&[10])));
        assert!(is_linear_cone(&wv(&[1, 2, 3, 4, 5]), &ds(&[5, 7])));
        assert!(!is_linear_cone(&wv(&[1, 1, 1, 1, 1]), &ds(&[2, 2])));
    }

    #[test]
    fn well_formedness_invariant_under_permutation() {
        // constructor canonicalizes order, so shuffled input agrees
        let shuffled = WeightVector::new(vec![5, 2, 1, 3]).unwrap();
        assert!(surface_well_formed(&shuffled, &ds(&[10])));
    }
}
