//! Zero- and one-dimensional moduli spaces of the Khovanov flow category.
//!
//! A zero-dimensional moduli point is a term of the differential, seen as an
//! [`Arrow`](khsq_cube::Arrow) from a source generator. One-dimensional
//! moduli spaces between generators two degrees apart are disjoint unions of
//! intervals whose endpoints are broken chains `x -> y -> z`; the
//! [`interval_partner`] function pairs the two ends of each interval.
//!
//! For a cocycle `μ`, a boundary matching pairs the points of
//! `M(y, μ) = ⋃_{x ∈ μ} M(y, x)` and optionally orders each pair. Together
//! with the interval matching this produces, for every `z`, a graph
//! [`BoundaryGraph`] in which every vertex has one edge of each kind, so the
//! graph is a disjoint union of even cycles.

mod gamma;
mod interval;
mod matching;

pub use gamma::{build_gammas, BoundaryGraph, GammaMode, GammaVertex};
pub use interval::{check_interval_signs, interval_partner, interval_pairs, Chain};
pub use matching::{boundary_points, Matching, MatchedPair, ModuliPoint};

use khsq_cube::CubeError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("generator {y} has an odd number of boundary points from the cochain")]
    OddBoundary { y: usize },
    #[error("chains from {x} to {z} do not form intervals: {why}")]
    BadInterval { x: usize, z: usize, why: String },
    #[error("interval from {x} to {z} violates the sign criterion")]
    SignCriterion { x: usize, z: usize },
    #[error(transparent)]
    Cube(#[from] CubeError),
}
