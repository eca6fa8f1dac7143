//! Exact linear algebra for cochain complexes: bit-packed F2 elimination,
//! cohomology bases with coordinates, sparse integer matrices, Smith normal
//! form and the mod 2 Bockstein.

mod f2;
mod homology;
mod int;
mod snf;

pub use f2::{
    f2_from_indices, f2_image_basis, f2_intersection_dim, f2_kernel_basis, f2_rank, f2_solve,
    next_one, Echelon, F2Matrix, F2Vec,
};
pub use homology::{
    bockstein, cohomology_group, complex_cohomology_z, prime_power_factors,
    universal_coefficients_f2, AbelianGroup, F2Cohomology,
};
pub use int::{lift_01, IntInvariants, IntMatrix};
pub use snf::{determinant, mat_mul, smith_diagonal, smith_normal_form, Snf};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("vector is not a cocycle")]
    NotACocycle,
    #[error("differentials do not compose to zero")]
    NotAComplex,
    #[error("integer overflow")]
    Overflow,
    #[error("torsion coefficient {0} does not fit in 64 bits")]
    TorsionTooLarge(String),
}
