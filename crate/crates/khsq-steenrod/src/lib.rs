//! Cochain-level formulas for `Sq^1` and `Sq^2` on Khovanov homology.
//!
//! The second Steenrod square of a cocycle is computed from a boundary
//! matching: every cycle of every boundary graph contributes a value in F2.
//! Two formulas are provided. The facet formula reads the cycle as a cyclic
//! sequence of facet labels and depends on the realization index `l`
//! modulo 4; the frame formula sums frame values and direction counts and
//! depends on a frame parameter `ε`. For `l = 1` and `ε = 1` the two
//! cochains differ by an explicit coboundary, see
//! [`odd_difference_primitive`].

mod facet;
mod schutz;
mod sq;

pub use facet::{alternating_signs, q_signs, q_unsigned, q_value, reduced, FacetCycle};
pub use schutz::{frame_value, frame_value_closed, schutz_value, standard_frame};
pub use sq::{
    coboundary, interval_homotopy, interval_max_map, odd_difference_primitive,
    second_point_signs, sq1_matrix, sq2_cochain, sq2_matrix, Cochain, CohomologySlot, Grading,
    MatchingChoice, Sq2Formula,
};

use khsq_algebra::AlgebraError;
use khsq_cube::CubeError;
use khsq_moduli::ModuliError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("a facet cycle has an odd number of switchbacks")]
    OddSwitchbacks,
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
