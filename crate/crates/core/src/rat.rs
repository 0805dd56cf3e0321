//! Exact rational arithmetic helpers.
//!
//! Every intersection number, lct value and lattice entry in this crate is a
//! `BigRational`; no floating point appears anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rat_i(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Renders `p/q`, or just `p` for integers.
pub fn rat_str(r: &Rational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
    }
}

/// True if `r` is the square of a rational, in which case the square root is
/// returned alongside.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["3", "-4", "5/7", "-21/10"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }
}
