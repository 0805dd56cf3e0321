//! Divisor-ledger arithmetic: the convexity construction for trading one
//! effective divisor against another, and the multiplicity/adjunction
//! thresholds used by the non-existence arguments.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::rat::{rat, rat_i, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum LedgerError {
    #[error("component lists differ")]
    ComponentMismatch,
    #[error("coefficients must be non-negative")]
    NegativeCoefficient,
    #[error("intersection matrix must be symmetric")]
    AsymmetricMatrix,
    #[error("divisors equal")]
    DivisorsEqual,
    #[error("total degrees differ: {0} vs {1}")]
    DegreeMismatch(String, String),
    #[error("mu unbounded: no component exceeds the base coefficient")]
    MuUnbounded,
    #[error("missing intersection data")]
    MissingIntersections,
    #[error("component index {0} out of range")]
    BadComponent(usize),
    #[error("malformed ledger JSON")]
    Parse,
    #[error("ledger coefficient of component {0} is {1}, expected {2}")]
    CoefficientMismatch(usize, String, String),
}

/// Named curve components with non-negative rational coefficients, and
/// optionally their pairwise intersections and degrees against a fixed ample
/// class.
#[derive(Clone, Debug)]
pub struct DivisorLedger {
    pub components: Vec<String>,
    pub coefficients: Vec<Rational>,
    pub pairwise_intersections: Option<Vec<Vec<Rational>>>,
    pub component_degrees: Option<Vec<Rational>>,
}

/// JSON image of a ledger; rationals travel as `p/q` strings.
#[derive(Serialize, serde::Deserialize)]
struct LedgerJson {
    components: Vec<String>,
    coefficients: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairwise_intersections: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    component_degrees: Option<Vec<String>>,
}

impl DivisorLedger {
    pub fn new(
        components: Vec<String>,
        coefficients: Vec<Rational>,
    ) -> Result<Self, LedgerError> {
        if components.len() != coefficients.len() {
            return Err(LedgerError::ComponentMismatch);
        }
        if coefficients.iter().any(|c| c < &Rational::zero()) {
            return Err(LedgerError::NegativeCoefficient);
        }
        Ok(DivisorLedger {
            components,
            coefficients,
            pairwise_intersections: None,
            component_degrees: None,
        })
    }

    pub fn with_intersections(mut self, m: Vec<Vec<Rational>>) -> Result<Self, LedgerError> {
        let n = self.components.len();
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(LedgerError::AsymmetricMatrix);
        }
        for i in 0..n {
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(LedgerError::AsymmetricMatrix);
                }
            }
        }
        self.pairwise_intersections = Some(m);
        Ok(self)
    }

    pub fn with_degrees(mut self, d: Vec<Rational>) -> Result<Self, LedgerError> {
        if d.len() != self.components.len() {
            return Err(LedgerError::ComponentMismatch);
        }
        self.component_degrees = Some(d);
        Ok(self)
    }

    /// Total degree against the fixed ample class, when degrees are present.
    pub fn total_degree(&self) -> Option<Rational> {
        self.component_degrees.as_ref().map(|d| {
            self.coefficients
                .iter()
                .zip(d)
                .map(|(c, deg)| c * deg)
                .sum()
        })
    }

    pub fn to_json(&self) -> String {
        let view = LedgerJson {
            components: self.components.clone(),
            coefficients: self.coefficients.iter().map(crate::rat::rat_str).collect(),
            pairwise_intersections: self
                .pairwise_intersections
                .as_ref()
                .map(|m| m.iter().map(|r| r.iter().map(crate::rat::rat_str).collect()).collect()),
            component_degrees: self
                .component_degrees
                .as_ref()
                .map(|d| d.iter().map(crate::rat::rat_str).collect()),
        };
        serde_json::to_string_pretty(&view).expect("ledger serialization")
    }

    pub fn from_json(s: &str) -> Result<Self, LedgerError> {
        let view: LedgerJson = serde_json::from_str(s).map_err(|_| LedgerError::Parse)?;
        let parse = |t: &String| crate::rat::parse_rat(t).ok_or(LedgerError::Parse);
        let coefficients = view.coefficients.iter().map(parse).collect::<Result<_, _>>()?;
        let mut out = DivisorLedger::new(view.components, coefficients)?;
        if let Some(m) = view.pairwise_intersections {
            let m = m
                .iter()
                .map(|row| row.iter().map(parse).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            out = out.with_intersections(m)?;
        }
        if let Some(d) = view.component_degrees {
            let d = d.iter().map(parse).collect::<Result<_, _>>()?;
            out = out.with_degrees(d)?;
        }
        Ok(out)
    }
}

/// Largest `mu` with `(1+mu) D - mu T` effective, together with that divisor.
/// At the maximum at least one component of the support of `T` drops out.
pub fn convexity_mu(
    d: &DivisorLedger,
    t: &DivisorLedger,
) -> Result<(Rational, DivisorLedger), LedgerError> {
    if d.components != t.components {
        return Err(LedgerError::ComponentMismatch);
    }
    if d.coefficients == t.coefficients {
        return Err(LedgerError::DivisorsEqual);
    }
    if let (Some(dd), Some(dt)) = (d.total_degree(), t.total_degree()) {
        if dd != dt {
            return Err(LedgerError::DegreeMismatch(
                crate::rat::rat_str(&dd),
                crate::rat::rat_str(&dt),
            ));
        }
    }
    // binding constraints come from components where T exceeds D
    let mut mu: Option<Rational> = None;
    for (a, b) in d.coefficients.iter().zip(&t.coefficients) {
        if b > a {
            let bound = a / (b - a);
            mu = Some(match mu {
                None => bound,
                Some(m) => m.min(bound),
            });
        }
    }
    let mu = mu.ok_or(LedgerError::MuUnbounded)?;
    let one_plus = rat_i(1) + &mu;
    let coeffs: Vec<Rational> = d
        .coefficients
        .iter()
        .zip(&t.coefficients)
        .map(|(a, b)| &one_plus * a - &mu * b)
        .collect();
    debug_assert!(coeffs.iter().all(|c| c >= &Rational::zero()));
    let mut out = d.clone();
    out.coefficients = coeffs;
    Ok((mu, out))
}

/// Point kinds for the multiplicity threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Smooth,
    /// A cyclic quotient point of order `r`.
    Quotient { r: u64 },
}

/// The strict lower bound that `mult_p(D)` must exceed when the pair is not
/// log canonical at `p`: 1 at a smooth point, `1/r` at a quotient point.
pub fn lc_multiplicity_threshold(point: PointKind) -> Rational {
    match point {
        PointKind::Smooth => rat_i(1),
        PointKind::Quotient { r } => rat(1, r as i64),
    }
}

/// `D_j . (D - a_j D_j)` from the ledger, and whether it exceeds `1/r`.
/// Callers use a failed bound as a contradiction certificate.
pub fn adjunction_bound(
    d: &DivisorLedger,
    j: usize,
    a_j: &Rational,
    r: u64,
) -> Result<(Rational, bool), LedgerError> {
    let m = d
        .pairwise_intersections
        .as_ref()
        .ok_or(LedgerError::MissingIntersections)?;
    if j >= d.components.len() {
        return Err(LedgerError::BadComponent(j));
    }
    if &d.coefficients[j] != a_j {
        return Err(LedgerError::CoefficientMismatch(
            j,
            crate::rat::rat_str(&d.coefficients[j]),
            crate::rat::rat_str(a_j),
        ));
    }
    let full: Rational = d
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| c * &m[j][i])
        .sum();
    let lhs = full - a_j * &m[j][j];
    let holds = lhs > rat(1, r as i64);
    Ok((lhs, holds))
}

/// The two coefficient bounds of the contradiction pattern on the
/// degree-(2n,2n) family: a boundary line coefficient is at most `1/n`, while
/// adjunction along the line forces it above `(2n-3)/(2n-2)`.
pub fn s2n_coefficient_bounds(n: u64) -> (Rational, Rational) {
    assert!(n >= 2);
    (rat(1, n as i64), rat(2 * n as i64 - 3, 2 * n as i64 - 2))
}

/// Ledger for `D = a L + Delta` on the degree-(2n,2n) family, with the
/// pairings the closed forms dictate: `L . Delta = L.D - a L^2`.
pub fn s2n_line_ledger(n: u64, a: &Rational) -> DivisorLedger {
    let nums = crate::intersect::s2n_numbers(n);
    let l_delta = &nums.line_dot_k - a * &nums.line_sq;
    DivisorLedger::new(
        vec!["L1".into(), "Delta".into()],
        vec![a.clone(), rat_i(1)],
    )
    .unwrap()
    .with_intersections(vec![
        vec![nums.line_sq.clone(), l_delta.clone()],
        vec![l_delta, rat_i(0)],
    ])
    .unwrap()
}
