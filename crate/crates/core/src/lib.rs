//! Exact-arithmetic verification of the cylinder classification for
//! index-one quasi-smooth well-formed log del Pezzo surfaces in weighted
//! projective spaces.
//!
//! The crate reproduces the classification tables for hypersurfaces and
//! codimension-two complete intersections, recomputes the intersection
//! numbers behind the non-existence arguments, replays the birational chain
//! for the degree-(2n,2n) family, locates reducible pencil members
//! symbolically, and emits the cylinder verdict for every family.

pub mod field;
pub mod intersect;
pub mod lattice;
pub mod pencil;
pub mod logpair;
pub mod graded;
pub mod poly;
pub mod rat;
pub mod report;

pub use graded::{DegreeSpec, Monomial, WeightVector};
pub use rat::Rational;
