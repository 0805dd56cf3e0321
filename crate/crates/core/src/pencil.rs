//! Pencil analysis on the degree-(2n,2n) family in `P(1,1,n,n,2n-1)`:
//! restriction of the defining equations to a pencil fiber, the conic's Gram
//! matrix, reducible members through the vanishing of its determinant, and
//! factorization of a reducible member into its two lines.
//!
//! Two coordinate presentations are supported. The generic presentation
//! carries quadratic parts `z(a1 z + b1 t)` and `t(a2 z + b2 t)` and is
//! restricted along fibers `x = alpha y`. The normalized presentation
//! (reducible member moved to `x = 0`) carries `zt` and `z^2 + t^2` and is
//! restricted along `y = a x`; its discriminant has degree at most `2n+2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, Fp, FqRing, QuadExt, Ring, SqrtField, Q};
use crate::poly::{
    fp_min_degree_factor, upoly_eval, upoly_eval_map, upoly_new, upoly_scale, upoly_sub,
    SparsePoly, UniPoly,
};
use crate::rat::{rat, Rational};
use crate::report::CheckEntry;

pub use crate::field::DEFAULT_PRIME;

#[derive(Debug, Error, PartialEq)]
pub enum PencilError {
    #[error("field too small to satisfy the coefficient invariants (need at least 5 elements)")]
    FieldTooSmall,
    #[error("sampling failed to satisfy the coefficient invariants")]
    SamplingFailed,
    #[error("degenerate pencil: the discriminant vanishes identically")]
    DegeneratePencil,
    #[error("irreducible conic: nonzero Gram determinant")]
    IrreducibleConic,
    #[error("proportional factors: input not quasi-smooth")]
    ProportionalFactors,
    #[error("parameter n must be at least 1")]
    BadParameter,
}

/// Quadratic parts of the two defining equations.
#[derive(Clone, Debug)]
pub enum Shape<E> {
    /// `wx + z(a1 z + b1 t) + ... = 0`, `wy + t(a2 z + b2 t) + ... = 0`.
    General { a1: E, b1: E, a2: E, b2: E },
    /// `wx + zt = 0`, `wy + z^2 + t^2 + ... = 0`; the f-side aux polynomials
    /// are absent.
    Normalized,
}

/// Coefficient data of one member of the family: the quadratic parts and the
/// six auxiliary homogeneous polynomials in `(x, y)`. A coefficient list of
/// degree `d` stores the coefficient of `x^(d-i) y^i` at index `i`.
#[derive(Clone, Debug)]
pub struct CiCoefficients<K: Field> {
    pub n: u64,
    pub shape: Shape<K::El>,
    pub f_n: Vec<K::El>,
    pub f_hat_n: Vec<K::El>,
    pub f_2n: Vec<K::El>,
    pub g_n: Vec<K::El>,
    pub g_hat_n: Vec<K::El>,
    pub g_2n: Vec<K::El>,
}

impl<K: Field> CiCoefficients<K> {
    /// Quadratic part of the first equation as `(z^2, zt, t^2)` coefficients.
    fn quad1(&self, ring: &K) -> (K::El, K::El, K::El) {
        match &self.shape {
            Shape::General { a1, b1, .. } => (a1.clone(), b1.clone(), ring.zero()),
            Shape::Normalized => (ring.zero(), ring.one(), ring.zero()),
        }
    }

    /// Quadratic part of the second equation.
    fn quad2(&self, ring: &K) -> (K::El, K::El, K::El) {
        match &self.shape {
            Shape::General { a2, b2, .. } => (ring.zero(), a2.clone(), b2.clone()),
            Shape::Normalized => (ring.one(), ring.zero(), ring.one()),
        }
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self.shape, Shape::Normalized)
    }

    /// Invariants of the generic presentation: `a1 != 0`, `b2 != 0` and the
    /// two quadratic linear forms not proportional.
    pub fn invariants_hold(&self, ring: &K) -> bool {
        match &self.shape {
            Shape::Normalized => self.f_n.iter().all(|c| ring.is_zero(c)),
            Shape::General { a1, b1, a2, b2 } => {
                let det = ring.sub(&ring.mul(a1, b2), &ring.mul(b1, a2));
                !ring.is_zero(a1) && !ring.is_zero(b2) && !ring.is_zero(&det)
            }
        }
    }

    /// Transports the coefficients through a field embedding.
    pub fn map<L: Field>(&self, embed: &impl Fn(&K::El) -> L::El) -> CiCoefficients<L> {
        let mv = |v: &Vec<K::El>| v.iter().map(embed).collect();
        CiCoefficients {
            n: self.n,
            shape: match &self.shape {
                Shape::Normalized => Shape::Normalized,
                Shape::General { a1, b1, a2, b2 } => Shape::General {
                    a1: embed(a1),
                    b1: embed(b1),
                    a2: embed(a2),
                    b2: embed(b2),
                },
            },
            f_n: mv(&self.f_n),
            f_hat_n: mv(&self.f_hat_n),
            f_2n: mv(&self.f_2n),
            g_n: mv(&self.g_n),
            g_hat_n: mv(&self.g_hat_n),
            g_2n: mv(&self.g_2n),
        }
    }

    /// Value of the first defining equation at a point `(x, y, z, t, w)`.
    pub fn eq1_at(&self, ring: &K, p: &[K::El; 5]) -> K::El {
        let (zz, zt, tt) = self.quad1(ring);
        let quad = quad_at(ring, &zz, &zt, &tt, &p[2], &p[3]);
        let aux = ring.add(
            &ring.add(
                &ring.mul(&hom_eval(ring, &self.f_n, &p[0], &p[1]), &p[2]),
                &ring.mul(&hom_eval(ring, &self.f_hat_n, &p[0], &p[1]), &p[3]),
            ),
            &hom_eval(ring, &self.f_2n, &p[0], &p[1]),
        );
        ring.add(&ring.mul(&p[4], &p[0]), &ring.add(&quad, &aux))
    }

    /// Value of the second defining equation at a point.
    pub fn eq2_at(&self, ring: &K, p: &[K::El; 5]) -> K::El {
        let (zz, zt, tt) = self.quad2(ring);
        let quad = quad_at(ring, &zz, &zt, &tt, &p[2], &p[3]);
        let aux = ring.add(
            &ring.add(
                &ring.mul(&hom_eval(ring, &self.g_n, &p[0], &p[1]), &p[2]),
                &ring.mul(&hom_eval(ring, &self.g_hat_n, &p[0], &p[1]), &p[3]),
            ),
            &hom_eval(ring, &self.g_2n, &p[0], &p[1]),
        );
        ring.add(&ring.mul(&p[4], &p[1]), &ring.add(&quad, &aux))
    }
}

fn quad_at<K: Ring>(ring: &K, zz: &K::El, zt: &K::El, tt: &K::El, z: &K::El, t: &K::El) -> K::El {
    let a = ring.mul(zz, &ring.mul(z, z));
    let b = ring.mul(zt, &ring.mul(z, t));
    let c = ring.mul(tt, &ring.mul(t, t));
    ring.add(&a, &ring.add(&b, &c))
}

/// A conic in the plane `(z : t : u)`, with `u` standing for the degree-n
/// power of the pencil coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicForm<E> {
    pub zz: E,
    pub zt: E,
    pub tt: E,
    pub zu: E,
    pub tu: E,
    pub uu: E,
}

impl<E> ConicForm<E> {
    pub fn map<F>(&self, f: impl Fn(&E) -> F) -> ConicForm<F> {
        ConicForm {
            zz: f(&self.zz),
            zt: f(&self.zt),
            tt: f(&self.tt),
            zu: f(&self.zu),
            tu: f(&self.tu),
            uu: f(&self.uu),
        }
    }
}

/// Evaluates a homogeneous coefficient list at `(x, y)`.
fn hom_eval<K: Ring>(ring: &K, coeffs: &[K::El], x: &K::El, y: &K::El) -> K::El {
    let deg = coeffs.len() - 1;
    let mut acc = ring.zero();
    for (i, c) in coeffs.iter().enumerate() {
        let mut term = c.clone();
        for _ in 0..(deg - i) {
            term = ring.mul(&term, x);
        }
        for _ in 0..i {
            term = ring.mul(&term, y);
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

/// `f(alpha, 1)` as a polynomial in alpha.
fn at_alpha_one<K: Ring>(ring: &K, coeffs: &[K::El]) -> UniPoly<K::El> {
    let mut rev = coeffs.to_vec();
    rev.reverse();
    upoly_new(ring, rev)
}

/// `f(1, a)` as a polynomial in a.
fn at_one_a<K: Ring>(ring: &K, coeffs: &[K::El]) -> UniPoly<K::El> {
    upoly_new(ring, coeffs.to_vec())
}

/// Restriction to the fiber `x = alpha y` with `u = y^n`, symbolically in
/// alpha: the first equation minus alpha times the second after eliminating
/// `w` on the chart `y = 1`.
pub fn restrict_to_fiber_symbolic<K: Field>(
    ring: &K,
    s: &CiCoefficients<K>,
) -> ConicForm<UniPoly<K::El>> {
    let x = crate::poly::upoly_x(ring);
    let cst = |e: &K::El| crate::poly::upoly_constant(ring, e.clone());
    let q1 = s.quad1(ring);
    let q2 = s.quad2(ring);
    let lin = |a: &K::El, b: &K::El| upoly_sub(ring, &cst(a), &crate::poly::upoly_mul(ring, &x, &cst(b)));
    let combo = |f: &[K::El], g: &[K::El]| {
        upoly_sub(
            ring,
            &at_alpha_one(ring, f),
            &crate::poly::upoly_mul(ring, &x, &at_alpha_one(ring, g)),
        )
    };
    ConicForm {
        zz: lin(&q1.0, &q2.0),
        zt: lin(&q1.1, &q2.1),
        tt: lin(&q1.2, &q2.2),
        zu: combo(&s.f_n, &s.g_n),
        tu: combo(&s.f_hat_n, &s.g_hat_n),
        uu: combo(&s.f_2n, &s.g_2n),
    }
}

/// Restriction to the fiber `y = a x` with `u = x^n`, symbolically in `a`:
/// the second equation minus `a` times the first on the chart `x = 1`.
pub fn restrict_to_fiber_y_symbolic<K: Field>(
    ring: &K,
    s: &CiCoefficients<K>,
) -> ConicForm<UniPoly<K::El>> {
    let x = crate::poly::upoly_x(ring);
    let cst = |e: &K::El| crate::poly::upoly_constant(ring, e.clone());
    let q1 = s.quad1(ring);
    let q2 = s.quad2(ring);
    let lin = |a: &K::El, b: &K::El| upoly_sub(ring, &cst(a), &crate::poly::upoly_mul(ring, &x, &cst(b)));
    let combo = |g: &[K::El], f: &[K::El]| {
        upoly_sub(
            ring,
            &at_one_a(ring, g),
            &crate::poly::upoly_mul(ring, &x, &at_one_a(ring, f)),
        )
    };
    ConicForm {
        zz: lin(&q2.0, &q1.0),
        zt: lin(&q2.1, &q1.1),
        tt: lin(&q2.2, &q1.2),
        zu: combo(&s.g_n, &s.f_n),
        tu: combo(&s.g_hat_n, &s.f_hat_n),
        uu: combo(&s.g_2n, &s.f_2n),
    }
}

/// The symbolic restriction in the presentation's own convention: fibers
/// `y = a x` for the normalized shape, `x = alpha y` otherwise.
pub fn restrict_symbolic<K: Field>(ring: &K, s: &CiCoefficients<K>) -> ConicForm<UniPoly<K::El>> {
    if s.is_normalized() {
        restrict_to_fiber_y_symbolic(ring, s)
    } else {
        restrict_to_fiber_symbolic(ring, s)
    }
}

/// Numeric restriction at a concrete fiber parameter.
pub fn restrict_at<K: Field>(ring: &K, s: &CiCoefficients<K>, value: &K::El) -> ConicForm<K::El> {
    restrict_symbolic(ring, s).map(|p| upoly_eval(ring, p, value))
}

/// Evaluates a symbolic conic at a parameter living in an extension.
pub fn conic_into<K: Ring, L: Ring>(
    target: &L,
    conic: &ConicForm<UniPoly<K::El>>,
    value: &L::El,
    embed: &impl Fn(&K::El) -> L::El,
) -> ConicForm<L::El> {
    conic.map(|p| upoly_eval_map(target, p, value, embed))
}

/// Standard symmetric Gram matrix of the conic: off-diagonal entries are
/// half the mixed coefficients.
pub fn gram_matrix<K: Field>(ring: &K, c: &ConicForm<K::El>) -> [[K::El; 3]; 3] {
    let h = |e: &K::El| ring.half(e);
    [
        [c.zz.clone(), h(&c.zt), h(&c.zu)],
        [h(&c.zt), c.tt.clone(), h(&c.tu)],
        [h(&c.zu), h(&c.tu), c.uu.clone()],
    ]
}

/// Gram matrix with polynomial entries; halving happens on the coefficients.
pub fn gram_matrix_symbolic<K: Field>(
    ring: &K,
    c: &ConicForm<UniPoly<K::El>>,
) -> [[UniPoly<K::El>; 3]; 3] {
    let half = ring.inv(&ring.from_i64(2)).expect("characteristic 2");
    let h = |p: &UniPoly<K::El>| upoly_scale(ring, p, &half);
    [
        [c.zz.clone(), h(&c.zt), h(&c.zu)],
        [h(&c.zt), c.tt.clone(), h(&c.tu)],
        [h(&c.zu), h(&c.tu), c.uu.clone()],
    ]
}

fn det3<K: Ring>(ring: &K, m: &[[K::El; 3]; 3]) -> K::El {
    let mul = |a: &K::El, b: &K::El| ring.mul(a, b);
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        ring.sub(&mul(&m[r1][c1], &m[r2][c2]), &mul(&m[r1][c2], &m[r2][c1]))
    };
    let t0 = mul(&m[0][0], &minor(1, 2, 1, 2));
    let t1 = mul(&m[0][1], &minor(1, 2, 0, 2));
    let t2 = mul(&m[0][2], &minor(1, 2, 0, 1));
    ring.add(&ring.sub(&t0, &t1), &t2)
}

fn det3_symbolic<K: Field>(ring: &K, m: &[[UniPoly<K::El>; 3]; 3]) -> UniPoly<K::El> {
    let mul = |a: &UniPoly<K::El>, b: &UniPoly<K::El>| crate::poly::upoly_mul(ring, a, b);
    let sub = |a: &UniPoly<K::El>, b: &UniPoly<K::El>| upoly_sub(ring, a, b);
    let add = |a: &UniPoly<K::El>, b: &UniPoly<K::El>| crate::poly::upoly_add(ring, a, b);
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        sub(&mul(&m[r1][c1], &m[r2][c2]), &mul(&m[r1][c2], &m[r2][c1]))
    };
    let t0 = mul(&m[0][0], &minor(1, 2, 1, 2));
    let t1 = mul(&m[0][1], &minor(1, 2, 0, 2));
    let t2 = mul(&m[0][2], &minor(1, 2, 0, 1));
    add(&sub(&t0, &t1), &t2)
}

/// Determinant of the symbolic Gram matrix in the fiber parameter; an
/// identically zero determinant signals a degenerate pencil.
pub fn reducibility_discriminant<K: Field>(
    ring: &K,
    s: &CiCoefficients<K>,
) -> Result<UniPoly<K::El>, PencilError> {
    let conic = restrict_symbolic(ring, s);
    let gram = gram_matrix_symbolic(ring, &conic);
    let det = det3_symbolic(ring, &gram);
    if det.is_zero() {
        Err(PencilError::DegeneratePencil)
    } else {
        Ok(det)
    }
}

/// The discriminant as a one-variable sparse polynomial in the fiber
/// parameter.
pub fn reducibility_discriminant_sparse<K: Field>(
    ring: &K,
    s: &CiCoefficients<K>,
) -> Result<SparsePoly<K::El>, PencilError> {
    let det = reducibility_discriminant(ring, s)?;
    let mut out = SparsePoly::zero(1);
    for (i, c) in det.coeffs.iter().enumerate() {
        if !ring.is_zero(c) {
            out.terms.insert(vec![i as u32], c.clone());
        }
    }
    Ok(out)
}

/// Plain-text term list `coefficient exponent`, one term per line, constant
/// term first.
pub fn render_term_list<K: Ring>(ring: &K, p: &UniPoly<K::El>) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs.iter().enumerate() {
        if !ring.is_zero(c) {
            out.push_str(&format!("{} {}\n", ring.el_str(c), i));
        }
    }
    out
}

/// A factorization of a rank-2 conic into two non-proportional lines,
/// either over the coefficient field or over a quadratic extension of it.
#[derive(Debug)]
pub enum Factorization<K: Field>
where
    K::El: std::fmt::Debug,
{
    Base {
        lines: [[K::El; 3]; 2],
        scale: K::El,
    },
    Extended {
        ext: QuadExt<K>,
        lines: [[(K::El, K::El); 3]; 2],
        scale: (K::El, K::El),
    },
}

/// Splits a conic whose Gram matrix is singular of rank 2 into two lines;
/// rank 3 and rank <= 1 are rejected.
pub fn factor_reducible<K: SqrtField>(
    ring: &K,
    c: &ConicForm<K::El>,
) -> Result<Factorization<K>, PencilError> {
    let g = gram_matrix(ring, c);
    if !ring.is_zero(&det3(ring, &g)) {
        return Err(PencilError::IrreducibleConic);
    }
    let mut rank2 = false;
    'outer: for r1 in 0..3 {
        for r2 in r1 + 1..3 {
            for c1 in 0..3 {
                for c2 in c1 + 1..3 {
                    let m = ring.sub(
                        &ring.mul(&g[r1][c1], &g[r2][c2]),
                        &ring.mul(&g[r1][c2], &g[r2][c1]),
                    );
                    if !ring.is_zero(&m) {
                        rank2 = true;
                        break 'outer;
                    }
                }
            }
        }
    }
    if !rank2 {
        return Err(PencilError::ProportionalFactors);
    }

    if let Some(i) = (0..3).find(|i| !ring.is_zero(&g[*i][*i])) {
        // complete the square on coordinate i, leaving a rank-one residue
        let a = g[i][i].clone();
        let ainv = ring.inv(&a).expect("nonzero diagonal");
        let l: Vec<K::El> = (0..3).map(|j| g[i][j].clone()).collect();
        // residue matrix m = g - (1/a) l l^T
        let mut res = [[ring.zero(), ring.zero(), ring.zero()], [
            ring.zero(),
            ring.zero(),
            ring.zero(),
        ], [ring.zero(), ring.zero(), ring.zero()]];
        for r in 0..3 {
            for s in 0..3 {
                let corr = ring.mul(&ainv, &ring.mul(&l[r], &l[s]));
                res[r][s] = ring.sub(&g[r][s], &corr);
            }
        }
        let j = (0..3)
            .find(|j| !ring.is_zero(&res[*j][*j]))
            .expect("rank-2 residue has a nonzero diagonal");
        let e = res[j][j].clone();
        let einv = ring.inv(&e).expect("nonzero residue diagonal");
        let wv: Vec<K::El> = (0..3).map(|s| ring.mul(&einv, &res[j][s])).collect();
        // Q = (1/a) L^2 + e W^2 = (1/a)(L + s W)(L - s W) with s^2 = -a e
        let delta = ring.neg(&ring.mul(&a, &e));
        let scaled_w = |s: &K::El, w: &K::El| ring.mul(s, w);
        match ring.sqrt(&delta) {
            Some(sq) => {
                let l1: Vec<K::El> = (0..3).map(|k| ring.add(&l[k], &scaled_w(&sq, &wv[k]))).collect();
                let l2: Vec<K::El> = (0..3).map(|k| ring.sub(&l[k], &scaled_w(&sq, &wv[k]))).collect();
                Ok(Factorization::Base {
                    lines: [
                        [l1[0].clone(), l1[1].clone(), l1[2].clone()],
                        [l2[0].clone(), l2[1].clone(), l2[2].clone()],
                    ],
                    scale: ainv,
                })
            }
            None => {
                let ext = QuadExt::new(ring.clone(), delta);
                let root = ext.root();
                let le: Vec<(K::El, K::El)> = l.iter().map(|x| ext.embed(x.clone())).collect();
                let we: Vec<(K::El, K::El)> = wv
                    .iter()
                    .map(|x| ext.mul(&ext.embed(x.clone()), &root))
                    .collect();
                let l1: Vec<_> = (0..3).map(|k| ext.add(&le[k], &we[k])).collect();
                let l2: Vec<_> = (0..3).map(|k| ext.sub(&le[k], &we[k])).collect();
                let scale = ext.embed(ainv);
                Ok(Factorization::Extended {
                    ext,
                    lines: [
                        [l1[0].clone(), l1[1].clone(), l1[2].clone()],
                        [l2[0].clone(), l2[1].clone(), l2[2].clone()],
                    ],
                    scale,
                })
            }
        }
    } else {
        // zero diagonal: the form is a combination of the three mixed terms
        // and det = 2 p q s forces one of them out
        let p = g[0][1].clone(); // zt / 2
        let q = g[0][2].clone(); // zu / 2
        let s = g[1][2].clone(); // tu / 2
        let two = ring.from_i64(2);
        let (l1, l2): (Vec<K::El>, Vec<K::El>) = if ring.is_zero(&s) {
            (
                vec![ring.one(), ring.zero(), ring.zero()],
                vec![ring.zero(), ring.mul(&two, &p), ring.mul(&two, &q)],
            )
        } else if ring.is_zero(&q) {
            (
                vec![ring.zero(), ring.one(), ring.zero()],
                vec![ring.mul(&two, &p), ring.zero(), ring.mul(&two, &s)],
            )
        } else {
            (
                vec![ring.zero(), ring.zero(), ring.one()],
                vec![ring.mul(&two, &q), ring.mul(&two, &s), ring.zero()],
            )
        };
        Ok(Factorization::Base {
            lines: [
                [l1[0].clone(), l1[1].clone(), l1[2].clone()],
                [l2[0].clone(), l2[1].clone(), l2[2].clone()],
            ],
            scale: ring.one(),
        })
    }
}

/// `scale * l1 * l2` expanded back into a conic.
pub fn expand_product<K: Field>(
    ring: &K,
    lines: &[[K::El; 3]; 2],
    scale: &K::El,
) -> ConicForm<K::El> {
    let l1 = &lines[0];
    let l2 = &lines[1];
    let m = |a: &K::El, b: &K::El| ring.mul(&ring.mul(a, b), scale);
    let mix = |i: usize, j: usize| ring.add(&m(&l1[i], &l2[j]), &m(&l1[j], &l2[i]));
    ConicForm {
        zz: m(&l1[0], &l2[0]),
        zt: mix(0, 1),
        tt: m(&l1[1], &l2[1]),
        zu: mix(0, 2),
        tu: mix(1, 2),
        uu: m(&l1[2], &l2[2]),
    }
}

/// Deterministic pseudo-random member of the family over `F_p` or the
/// rationals. The generic presentation resamples its quadratic part until
/// the coefficient invariants hold; the normalized presentation has a fixed
/// quadratic part and samples only the g-side polynomials.
pub trait SampleField: Field {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::El;
    fn enough_elements(&self) -> bool;
}

impl SampleField for Fp {
    fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn enough_elements(&self) -> bool {
        self.p >= 5
    }
}

impl SampleField for Q {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Rational {
        rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=3))
    }
    fn enough_elements(&self) -> bool {
        true
    }
}

pub fn sample_surface<K: SampleField>(
    ring: &K,
    n: u64,
    seed: u64,
    normalized: bool,
) -> Result<CiCoefficients<K>, PencilError> {
    if n < 1 {
        return Err(PencilError::BadParameter);
    }
    if !ring.enough_elements() {
        return Err(PencilError::FieldTooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vec_of = |rng: &mut ChaCha8Rng, len: usize| -> Vec<K::El> {
        (0..len).map(|_| ring.sample(rng)).collect()
    };
    let ln = n as usize + 1;
    let l2n = 2 * n as usize + 1;
    if normalized {
        return Ok(CiCoefficients {
            n,
            shape: Shape::Normalized,
            f_n: vec![ring.zero(); ln],
            f_hat_n: vec![ring.zero(); ln],
            f_2n: vec![ring.zero(); l2n],
            g_n: vec_of(&mut rng, ln),
            g_hat_n: vec_of(&mut rng, ln),
            g_2n: vec_of(&mut rng, l2n),
        });
    }
    for _ in 0..64 {
        let shape = Shape::General {
            a1: ring.sample(&mut rng),
            b1: ring.sample(&mut rng),
            a2: ring.sample(&mut rng),
            b2: ring.sample(&mut rng),
        };
        let candidate = CiCoefficients {
            n,
            shape,
            f_n: vec_of(&mut rng, ln),
            f_hat_n: vec_of(&mut rng, ln),
            f_2n: vec_of(&mut rng, l2n),
            g_n: vec_of(&mut rng, ln),
            g_hat_n: vec_of(&mut rng, ln),
            g_2n: vec_of(&mut rng, l2n),
        };
        if candidate.invariants_hold(ring) {
            return Ok(candidate);
        }
    }
    Err(PencilError::SamplingFailed)
}

/// Report of one end-to-end pencil verification.
#[derive(Debug)]
pub struct PencilReport {
    pub n: u64,
    pub seed: u64,
    pub normalized: bool,
    pub checks: Vec<CheckEntry>,
    /// Rendered defining data of the two curves of the located reducible
    /// member.
    pub curves: Vec<String>,
    /// Term list of the discriminant.
    pub discriminant: String,
}

impl PencilReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The fiber point used on the chart where `u = 1`: the normalized
/// presentation fixes `x = 1, y = a`, the generic one `x = alpha, y = 1`.
fn fiber_point<L: Field>(ring: &L, normalized: bool, value: &L::El) -> (L::El, L::El) {
    if normalized {
        (ring.one(), value.clone())
    } else {
        (value.clone(), ring.one())
    }
}

/// Incidence and reconstruction checks over the root field: the two lines
/// must meet the surface chart in exactly one point away from the base
/// point, and both curves must pass through the base point itself.
fn incidence_checks<L: Field>(
    ring: &L,
    s: &CiCoefficients<L>,
    normalized: bool,
    value: &L::El,
    conic: &ConicForm<L::El>,
    lines: &[[L::El; 3]; 2],
    scale: &L::El,
    checks: &mut Vec<CheckEntry>,
    curves: &mut Vec<String>,
) {
    let back = expand_product(ring, lines, scale);
    checks.push(CheckEntry::bool_check(
        "factor.product",
        "line product reproduces the fiber conic exactly",
        back == *conic,
    ));
    checks.push(CheckEntry::bool_check(
        "factor.nonproportional",
        "the two lines are not proportional",
        !lines_proportional(ring, lines),
    ));

    // cross product of the line coefficients: the plane intersection point
    let l1 = &lines[0];
    let l2 = &lines[1];
    let cross = |i: usize, j: usize| {
        ring.sub(&ring.mul(&l1[i], &l2[j]), &ring.mul(&l1[j], &l2[i]))
    };
    let q = [cross(1, 2), cross(2, 0), cross(0, 1)];
    let off_base = !ring.is_zero(&q[2]);
    checks.push(CheckEntry::bool_check(
        "points.second",
        "the lines meet away from the base point of the pencil",
        off_base,
    ));
    let mut count = 1; // the base point
    if off_base {
        let uinv = ring.inv(&q[2]).expect("nonzero chart coordinate");
        let z0 = ring.mul(&q[0], &uinv);
        let t0 = ring.mul(&q[1], &uinv);
        let (x0, y0) = fiber_point(ring, normalized, value);
        // w from the equation whose w-coefficient is 1 on this chart
        let partial = [x0.clone(), y0.clone(), z0.clone(), t0.clone(), ring.zero()];
        let w0 = if normalized {
            ring.neg(&s.eq1_at(ring, &partial))
        } else {
            ring.neg(&s.eq2_at(ring, &partial))
        };
        let point = [x0, y0, z0, t0, w0];
        let other = if normalized {
            s.eq2_at(ring, &point)
        } else {
            s.eq1_at(ring, &point)
        };
        checks.push(CheckEntry::bool_check(
            "points.on_surface",
            "the second intersection point satisfies both defining equations",
            ring.is_zero(&other),
        ));
        if ring.is_zero(&other) {
            count += 1;
        }
    }
    checks.push(CheckEntry::new(
        "points.count",
        "the curves meet in exactly 2 points including the base point",
        "2",
        count.to_string(),
    ));

    // both curves pass through the base point [0:0:0:0:1]
    let base = [
        ring.zero(),
        ring.zero(),
        ring.zero(),
        ring.zero(),
        ring.one(),
    ];
    let on1 = ring.is_zero(&s.eq1_at(ring, &base));
    let on2 = ring.is_zero(&s.eq2_at(ring, &base));
    checks.push(CheckEntry::bool_check(
        "points.pw",
        "the base point p_w lies on the surface and on both curves",
        on1 && on2,
    ));

    let fiber_eq = if normalized { "y - a*x" } else { "x - alpha*y" };
    for (i, l) in lines.iter().enumerate() {
        curves.push(format!(
            "L{}: {} = 0, ({})*z + ({})*t + ({})*u = 0, second defining equation",
            i + 1,
            fiber_eq,
            ring.el_str(&l[0]),
            ring.el_str(&l[1]),
            ring.el_str(&l[2]),
        ));
    }
}

fn factor_and_check<L: SqrtField>(
    ring: &L,
    s: &CiCoefficients<L>,
    normalized: bool,
    value: &L::El,
    checks: &mut Vec<CheckEntry>,
    curves: &mut Vec<String>,
) {
    let conic = restrict_at(ring, s, value);
    match factor_reducible(ring, &conic) {
        Err(e) => checks.push(CheckEntry::new(
            "factor.split",
            "conic at the root splits into two lines",
            "split",
            e.to_string(),
        )),
        Ok(Factorization::Base { lines, scale }) => {
            checks.push(CheckEntry::bool_check(
                "factor.split",
                "conic at the root splits over the root field",
                true,
            ));
            incidence_checks(ring, s, normalized, value, &conic, &lines, &scale, checks, curves);
        }
        Ok(Factorization::Extended { ext, lines, scale }) => {
            checks.push(CheckEntry::bool_check(
                "factor.split",
                "conic at the root splits over a quadratic extension",
                true,
            ));
            let s_ext = s.map(&|e| ext.embed(e.clone()));
            let value_ext = ext.embed(value.clone());
            let conic_ext = conic.map(|e| ext.embed(e.clone()));
            incidence_checks(
                &ext, &s_ext, normalized, &value_ext, &conic_ext, &lines, &scale, checks, curves,
            );
        }
    }
}

/// End-to-end verification over `F_p`: sample, form the symbolic
/// discriminant, move to the smallest field containing a root, factor the
/// conic there and check the two-point incidence.
pub fn verify_lr_fp(n: u64, seed: u64, prime: u64, normalized: bool) -> Result<PencilReport, PencilError> {
    let fp = Fp::new(prime);
    let s = sample_surface(&fp, n, seed, normalized)?;
    let mut checks = Vec::new();
    let mut curves = Vec::new();

    let disc = reducibility_discriminant(&fp, &s)?;
    let degree = disc.degree().unwrap_or(0);
    let bound = if normalized { 2 * n + 2 } else { 2 * n + 3 } as usize;
    checks.push(CheckEntry::bool_check(
        "disc.nonzero",
        "discriminant of the pencil is a nonzero polynomial",
        true,
    ));
    checks.push(CheckEntry::new(
        "disc.degree",
        format!("discriminant degree stays within {bound}"),
        format!("<= {bound}"),
        if degree <= bound {
            format!("<= {bound}")
        } else {
            degree.to_string()
        },
    ));

    if degree == 0 {
        checks.push(CheckEntry::bool_check(
            "root.found",
            "a root of the discriminant exists",
            false,
        ));
        return Ok(PencilReport {
            n,
            seed,
            normalized,
            checks,
            curves,
            discriminant: render_term_list(&fp, &disc),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xddd5_1733_ae14_9cd7);
    let factor = fp_min_degree_factor(&fp, &disc.coeffs, &mut rng);
    let ext_degree = factor.len() - 1;
    checks.push(CheckEntry::new(
        "root.found",
        "a root exists in an extension of bounded degree",
        "degree >= 1",
        format!("degree {ext_degree} extension"),
    ));
    checks.last_mut().unwrap().pass = ext_degree >= 1;

    if ext_degree == 1 {
        // root in the prime field
        let root = fp.neg(&factor[0]);
        debug_assert_eq!(upoly_eval(&fp, &disc, &root), 0);
        let _ = factor_and_check(&fp, &s, normalized, &root, &mut checks, &mut curves);
    } else {
        let fq = FqRing::new(fp, factor);
        let root = fq.generator();
        let s_ext = s.map(&|e| fq.embed(*e));
        debug_assert!(fq.is_zero(&upoly_eval_map(&fq, &disc, &root, |c| fq.embed(*c))));
        let _ = factor_and_check(&fq, &s_ext, normalized, &root, &mut checks, &mut curves);
    }

    Ok(PencilReport {
        n,
        seed,
        normalized,
        checks,
        curves,
        discriminant: render_term_list(&fp, &disc),
    })
}

/// End-to-end verification over the rationals: rational roots are searched
/// directly, degree-two discriminants fall back to the quadratic formula in
/// an extension, and anything harder reruns over the default prime field.
pub fn verify_lr_q(n: u64, seed: u64, normalized: bool) -> Result<PencilReport, PencilError> {
    let s = sample_surface(&Q, n, seed, normalized)?;
    let mut checks = Vec::new();
    let mut curves = Vec::new();
    let disc = reducibility_discriminant(&Q, &s)?;
    let degree = disc.degree().unwrap_or(0);
    let bound = if normalized { 2 * n + 2 } else { 2 * n + 3 } as usize;
    checks.push(CheckEntry::bool_check(
        "disc.nonzero",
        "discriminant of the pencil is a nonzero polynomial",
        true,
    ));
    checks.push(CheckEntry::new(
        "disc.degree",
        format!("discriminant degree stays within {bound}"),
        format!("<= {bound}"),
        if degree <= bound {
            format!("<= {bound}")
        } else {
            degree.to_string()
        },
    ));

    if let Some(root) = rational_root(&disc) {
        checks.push(CheckEntry::bool_check(
            "root.found",
            "a rational root of the discriminant exists",
            true,
        ));
        factor_and_check(&Q, &s, normalized, &root, &mut checks, &mut curves);
        return Ok(PencilReport {
            n,
            seed,
            normalized,
            checks,
            curves,
            discriminant: render_term_list(&Q, &disc),
        });
    }
    if degree == 2 {
        // quadratic formula in Q(sqrt(disc'))
        let c = &disc.coeffs;
        let two_a = &c[2] + &c[2];
        let delta = &c[1] * &c[1] - rat(4, 1) * &c[2] * &c[0];
        match crate::rat::rational_sqrt(&delta) {
            Some(sq) => {
                let root = (sq - &c[1]) / &two_a;
                checks.push(CheckEntry::bool_check(
                    "root.found",
                    "a rational root of the discriminant exists",
                    true,
                ));
                factor_and_check(&Q, &s, normalized, &root, &mut checks, &mut curves);
            }
            None => {
                let ext = QuadExt::new(Q, delta);
                let root = ext.mul(
                    &ext.sub(&ext.root(), &ext.embed(c[1].clone())),
                    &ext.inv(&ext.embed(two_a)).expect("nonzero leading coefficient"),
                );
                checks.push(CheckEntry::bool_check(
                    "root.found",
                    "a root exists in a quadratic extension of the rationals",
                    true,
                ));
                let s_ext = s.map(&|e| ext.embed(e.clone()));
                factor_and_check(&ext, &s_ext, normalized, &root, &mut checks, &mut curves);
            }
        }
        return Ok(PencilReport {
            n,
            seed,
            normalized,
            checks,
            curves,
            discriminant: render_term_list(&Q, &disc),
        });
    }
    // no tractable root over the rationals: rerun over the prime field
    let mut report = verify_lr_fp(n, seed, DEFAULT_PRIME, normalized)?;
    report.checks.insert(
        0,
        CheckEntry::bool_check(
            "field.fallback",
            "no rational root of small degree; switched to the default prime field",
            true,
        ),
    );
    Ok(report)
}

/// Rational roots of an exact polynomial by divisor search on the cleared
/// integer form.
fn rational_root(p: &UniPoly<Rational>) -> Option<Rational> {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    if p.coeffs.is_empty() {
        return None;
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in &p.coeffs {
        lcm = num_integer::lcm(lcm.clone(), c.denom().clone());
    }
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let lead = ints.last().unwrap().clone();
    let low_idx = ints.iter().position(|c| !c.is_zero())?;
    if low_idx > 0 {
        return Some(Rational::zero());
    }
    let constant = ints[0].clone();
    let divisors = |v: &BigInt| -> Vec<BigInt> {
        let v = v.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= v {
            if (&v % &d).is_zero() {
                out.push(d.clone());
                out.push(&v / &d);
            }
            d += 1;
        }
        out
    };
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            for sign in [1i64, -1] {
                let cand = Rational::new(&num * BigInt::from(sign), den.clone());
                if upoly_eval(&Q, p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Lines are proportional iff all cross minors of their coefficient rows
/// vanish.
pub fn lines_proportional<K: Field>(ring: &K, lines: &[[K::El; 3]; 2]) -> bool {
    let l1 = &lines[0];
    let l2 = &lines[1];
    for i in 0..3 {
        for j in i + 1..3 {
            let m = ring.sub(&ring.mul(&l1[i], &l2[j]), &ring.mul(&l1[j], &l2[i]));
            if !ring.is_zero(&m) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn normalized_over_q(n: u64, g_n: Vec<Rational>, g_hat: Vec<Rational>, g_2n: Vec<Rational>) -> CiCoefficients<Q> {
        CiCoefficients {
            n,
            shape: Shape::Normalized,
            f_n: vec![rat_i(0); n as usize + 1],
            f_hat_n: vec![rat_i(0); n as usize + 1],
            f_2n: vec![rat_i(0); 2 * n as usize + 1],
            g_n,
            g_hat_n: g_hat,
            g_2n,
        }
    }

    #[test]
    fn normalized_single_term_discriminant_has_roots_at_plus_minus_two() {
        for n in 1..=4u64 {
            let mut g2n = vec![rat_i(0); 2 * n as usize + 1];
            g2n[0] = rat_i(3); // 3 x^{2n}
            let s = normalized_over_q(
                n,
                vec![rat_i(0); n as usize + 1],
                vec![rat_i(0); n as usize + 1],
                g2n,
            );
            let disc = reducibility_discriminant(&Q, &s).unwrap();
            // c (1 - a^2/4) with c = 3
            assert_eq!(disc.coeffs, vec![rat_i(3), rat_i(0), rat(-3, 4)]);
            assert_eq!(upoly_eval(&Q, &disc, &rat_i(2)), rat_i(0));
            assert_eq!(upoly_eval(&Q, &disc, &rat_i(-2)), rat_i(0));
        }
    }

    #[test]
    fn all_aux_zero_pencil_is_degenerate() {
        let s: CiCoefficients<Q> = CiCoefficients {
            n: 2,
            shape: Shape::General {
                a1: rat_i(1),
                b1: rat_i(1),
                a2: rat_i(1),
                b2: rat_i(1),
            },
            f_n: vec![rat_i(0); 3],
            f_hat_n: vec![rat_i(0); 3],
            f_2n: vec![rat_i(0); 5],
            g_n: vec![rat_i(0); 3],
            g_hat_n: vec![rat_i(0); 3],
            g_2n: vec![rat_i(0); 5],
        };
        assert_eq!(
            reducibility_discriminant(&Q, &s).unwrap_err(),
            PencilError::DegeneratePencil
        );
    }

    #[test]
    fn gram_of_the_normalized_fiber() {
        // z^2 + t^2 - a z t with no aux terms
        let s = normalized_over_q(
            2,
            vec![rat_i(0); 3],
            vec![rat_i(0); 3],
            vec![rat_i(0); 5],
        );
        let conic = restrict_at(&Q, &s, &rat_i(5));
        assert_eq!(conic.zz, rat_i(1));
        assert_eq!(conic.zt, rat_i(-5));
        assert_eq!(conic.tt, rat_i(1));
        let g = gram_matrix(&Q, &conic);
        assert_eq!(g[0][1], rat(-5, 2));
        assert_eq!(g[2][2], rat_i(0));
    }

    #[test]
    fn factor_zt_into_the_coordinate_lines() {
        let conic = ConicForm {
            zz: rat_i(0),
            zt: rat_i(1),
            tt: rat_i(0),
            zu: rat_i(0),
            tu: rat_i(0),
            uu: rat_i(0),
        };
        match factor_reducible(&Q, &conic).unwrap() {
            Factorization::Base { lines, scale } => {
                assert!(!lines_proportional(&Q, &lines));
                let back = expand_product(&Q, &lines, &scale);
                assert_eq!(back, conic);
                // the two lines are z and t up to scale
                assert_eq!(lines[0][1], rat_i(0));
                assert_eq!(lines[0][2], rat_i(0));
                assert_eq!(lines[1][0], rat_i(0));
                assert_eq!(lines[1][2], rat_i(0));
            }
            Factorization::Extended { .. } => panic!("zt splits over the base field"),
        }
    }

    #[test]
    fn factor_difference_of_squares() {
        // (z - t)^2 - u^2 = (z - t - u)(z - t + u)
        let conic = ConicForm {
            zz: rat_i(1),
            zt: rat_i(-2),
            tt: rat_i(1),
            zu: rat_i(0),
            tu: rat_i(0),
            uu: rat_i(-1),
        };
        match factor_reducible(&Q, &conic).unwrap() {
            Factorization::Base { lines, scale } => {
                let back = expand_product(&Q, &lines, &scale);
                assert_eq!(back, conic);
                assert!(!lines_proportional(&Q, &lines));
            }
            Factorization::Extended { .. } => panic!("splits over the rationals"),
        }
    }

    #[test]
    fn factor_needing_a_quadratic_extension() {
        // (z - t)^2 + u^2 needs sqrt(-1) over the rationals
        let conic = ConicForm {
            zz: rat_i(1),
            zt: rat_i(-2),
            tt: rat_i(1),
            zu: rat_i(0),
            tu: rat_i(0),
            uu: rat_i(1),
        };
        match factor_reducible(&Q, &conic).unwrap() {
            Factorization::Base { .. } => panic!("should not split over the rationals"),
            Factorization::Extended { ext, lines, scale } => {
                let back = expand_product(&ext, &lines, &scale);
                let embedded = conic.map(|e| ext.embed(e.clone()));
                assert_eq!(back, embedded);
                assert!(!lines_proportional(&ext, &lines));
            }
        }
    }

    #[test]
    fn double_line_is_rejected() {
        // (z + t)^2: rank 1
        let conic = ConicForm {
            zz: rat_i(1),
            zt: rat_i(2),
            tt: rat_i(1),
            zu: rat_i(0),
            tu: rat_i(0),
            uu: rat_i(0),
        };
        assert_eq!(
            factor_reducible(&Q, &conic).unwrap_err(),
            PencilError::ProportionalFactors
        );
    }

    #[test]
    fn smooth_conic_is_rejected() {
        let conic = ConicForm {
            zz: rat_i(1),
            zt: rat_i(0),
            tt: rat_i(1),
            zu: rat_i(0),
            tu: rat_i(0),
            uu: rat_i(1),
        };
        assert_eq!(
            factor_reducible(&Q, &conic).unwrap_err(),
            PencilError::IrreducibleConic
        );
    }

    #[test]
    fn determinant_scales_cubically_but_verdict_is_invariant() {
        let s = {
            let mut g2n = vec![rat_i(0); 5];
            g2n[0] = rat_i(3);
            let mut gn = vec![rat_i(0); 3];
            gn[1] = rat_i(2);
            normalized_over_q(2, gn, vec![rat_i(0); 3], g2n)
        };
        let conic = restrict_at(&Q, &s, &rat_i(7));
        let lambda = rat_i(5);
        let scaled = conic.map(|e| e * &lambda);
        let d1 = det3(&Q, &gram_matrix(&Q, &conic));
        let d2 = det3(&Q, &gram_matrix(&Q, &scaled));
        assert_eq!(d2, &d1 * &lambda * &lambda * &lambda);
        assert_eq!(d1 == rat_i(0), d2 == rat_i(0), "verdict must not depend on scaling");
    }

    #[test]
    fn symbolic_coefficient_degrees_are_bounded() {
        // general shape: fiber coefficients are polynomials in alpha of
        // degree at most 2n+1
        let fp = Fp::new(DEFAULT_PRIME);
        for n in 1..=4u64 {
            let s = sample_surface(&fp, n, 11, false).unwrap();
            let conic = restrict_symbolic(&fp, &s);
            let bound = 2 * n as usize + 1;
            for p in [&conic.zu, &conic.tu, &conic.uu] {
                assert!(p.degree().unwrap_or(0) <= bound);
            }
        }
    }

    #[test]
    fn sampling_respects_invariants() {
        let fp = Fp::new(DEFAULT_PRIME);
        for seed in 0..8 {
            let s = sample_surface(&fp, 2, seed, false).unwrap();
            assert!(s.invariants_hold(&fp));
            let sq = sample_surface(&Q, 3, seed, false).unwrap();
            assert!(sq.invariants_hold(&Q));
        }
        assert_eq!(
            sample_surface(&Fp::new(3), 2, 0, false).unwrap_err(),
            PencilError::FieldTooSmall
        );
    }

    #[test]
    fn full_pipeline_over_fp() {
        for n in 1..=3u64 {
            for seed in 0..3u64 {
                for normalized in [false, true] {
                    let report = verify_lr_fp(n, seed, DEFAULT_PRIME, normalized).unwrap();
                    assert!(
                        report.all_pass(),
                        "n={n} seed={seed} normalized={normalized}:\n{:#?}",
                        report.checks
                    );
                }
            }
        }
    }

    #[test]
    fn full_pipeline_over_q_with_fallback() {
        for seed in 0..3u64 {
            let report = verify_lr_q(1, seed, false).unwrap();
            assert!(report.all_pass(), "seed={seed}:\n{:#?}", report.checks);
        }
    }

    #[test]
    fn dp4_two_point_oracle() {
        // independent check for n = 1: solve the two line equations by
        // Cramer's rule on the chart and confirm the point satisfies both
        // defining equations
        let fp = Fp::new(DEFAULT_PRIME);
        let s = sample_surface(&fp, 1, 0, false).unwrap();
        let disc = reducibility_discriminant(&fp, &s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let factor = fp_min_degree_factor(&fp, &disc.coeffs, &mut rng);
        if factor.len() != 2 {
            // the seeded discriminant happens to have no root in the prime
            // field; the generic pipeline test already covers extensions
            return;
        }
        let alpha = fp.neg(&factor[0]);
        let conic = restrict_at(&fp, &s, &alpha);
        if let Factorization::Base { lines, .. } = factor_reducible(&fp, &conic).unwrap() {
            let [l1, l2] = &lines;
            // Cramer on k z + l t = -m
            let det = fp.sub(&fp.mul(&l1[0], &l2[1]), &fp.mul(&l1[1], &l2[0]));
            assert_ne!(det, 0, "lines must be transverse in (z, t)");
            let rz = fp.sub(
                &fp.mul(&fp.neg(&l1[2]), &l2[1]),
                &fp.mul(&fp.neg(&l2[2]), &l1[1]),
            );
            let rt = fp.sub(
                &fp.mul(&l1[0], &fp.neg(&l2[2])),
                &fp.mul(&l2[0], &fp.neg(&l1[2])),
            );
            let dinv = fp.inv(&det).unwrap();
            let z0 = fp.mul(&rz, &dinv);
            let t0 = fp.mul(&rt, &dinv);
            let partial = [alpha, 1, z0, t0, 0];
            let w0 = fp.neg(&s.eq2_at(&fp, &partial));
            let point = [alpha, 1, z0, t0, w0];
            assert_eq!(s.eq1_at(&fp, &point), 0);
            assert_eq!(s.eq2_at(&fp, &point), 0);
        }
    }
}
