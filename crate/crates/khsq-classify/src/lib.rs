//! The `St_l` invariant of a link and the stable homotopy types it
//! determines.
//!
//! For each bidegree `(i, j)`, `St_l(i, j)` records how `Sq^2` on the F2
//! Khovanov homology of `X_l` interacts with the Bockstein `Sq^1` of the
//! integral complex of parity `l mod 2`. When Khovanov homology lies on
//! three adjacent diagonals with only `Z/2` and `Z/3` torsion, and no
//! torsion on the lowest diagonal, each `X_l^j` splits as a wedge of four
//! kinds of small spectra and Moore spaces, with multiplicities read off
//! `St_l` and the homology.

mod hypotheses;
mod st;
mod table;
mod wedge;

pub use hypotheses::{check_hypotheses, HypothesisReport};
pub use st::{st_ranks, st_table, st_tables, st_tuple, StEntry, StTable};
pub use table::{parse_st_reference, KnotRows, StReference};
pub use wedge::{wedge, Summand, WedgeDecomposition};

use khsq_algebra::AlgebraError;
use khsq_cube::CubeError;
use khsq_steenrod::SteenrodError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("St tuple at ({i}, {j}) would be negative: ranks {ranks:?}")]
    NegativeTuple { i: i32, j: i32, ranks: [usize; 4] },
    #[error("the homology fails the classification hypotheses")]
    HypothesesFail,
    #[error("homology at ({i}, {j}) has no room for the summand {summand}")]
    MissingSummand { i: i32, j: i32, summand: String },
    #[error("line {line} of the St table: {why}")]
    BadTableLine { line: usize, why: String },
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
