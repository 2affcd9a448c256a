//! Dense complex linear algebra for finite-dimensional multipartite states.
//!
//! Every composite index uses the Kronecker convention with the left (first)
//! subsystem as the slowest-varying digit, so the four-spin label
//! `|s1 s2 s3 s4>` sits at index `8 s1 + 4 s2 + 2 s3 + s4`.

mod fock;
mod operator;
pub mod random;
mod schmidt;
mod shape;
mod state;
mod unitaries;

pub(crate) use fock::smallest_truncation;
pub use fock::{coherent_state, number_phase_unitary, poisson_tail, FockSpec};
pub use operator::{partial_trace, Operator, OperatorKind};
pub use schmidt::{schmidt_decompose, SchmidtForm};
pub use shape::HilbertShape;
pub use state::StateVector;
pub use unitaries::{pauli_x, pauli_y, projector_phase_unitary};

/// Tolerance on the Euclidean norm of a [`StateVector`].
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Tolerance on `U^dagger U - I` for unitary operators.
pub const UNITARY_TOLERANCE: f64 = 1e-10;
/// Tolerance on `A - A^dagger` for Hermitian operators.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Largest negative eigenvalue tolerated in a density operator.
pub const DENSITY_EIGEN_TOLERANCE: f64 = 1e-10;
/// Schmidt coefficients below this are reported as exact zeros.
pub const SCHMIDT_ZERO: f64 = 1e-12;
