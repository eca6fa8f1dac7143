//! The cube of resolutions of a link diagram.
//!
//! A vertex is a bitmask of 1-smoothed crossings. A generator is a vertex
//! together with a bitmask of circles; in the even theory a set bit labels
//! the circle `x`, in the odd theory the bitmask is a monomial of the
//! exterior algebra on the circles, with factors in increasing circle order.
//! Generators are numbered by vertex, then by mask.

mod complex;
mod cube;
mod resolution;

pub use complex::{GradedComplex, Parity};
pub use cube::{
    edge_index, edge_sign, index, standard_sign, Arrow, Cube, Edge, EdgeImages, EdgeKind,
    LadybugRule,
};
pub use resolution::{arc_partner, arcs, resolve, Resolution, Vertex};

use khsq_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("({t:b}, {s:b}) is not an edge of the cube")]
    NotAnEdge { t: Vertex, s: Vertex },
    #[error("no valid odd sign assignment: {0}")]
    NoValidAssignment(String),
    #[error("{0} crossings exceed the supported cube size")]
    TooLarge(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
