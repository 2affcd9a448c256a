//! Pancharatnam phases and the Pancharatnam phase deficit of pure multipartite
//! states under local unitary evolution.
//!
//! A nonzero deficit between the global phase and the sum of the subsystems'
//! mixed-state phases witnesses entanglement. The crate provides:
//!
//! * [`qstate`]: dense state vectors, operators, partial traces, Schmidt
//!   decomposition, coherent states and the unitary families used by the
//!   scenarios.
//! * [`phase`]: principal-value phases, the deficit and its Schmidt-basis
//!   closed form, and dynamical phases.
//! * [`measures`]: von Neumann entropy and two-qubit concurrence.
//! * [`scenarios`]: the micro-macro, coherent-cat and Kondo boundary-spin
//!   systems together with their published closed forms.
//! * [`oracle`]: a brute-force dense evaluation path and the auditor that
//!   grades the closed forms against it.
//!
//! Conventions: `hbar = 1`; Kronecker products take the left operand as the
//! slow index; entropies are in nats unless a name says otherwise.

pub mod error;
pub mod measures;
pub mod oracle;
pub mod phase;
pub mod qstate;
pub mod scenarios;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use phase::{
    deficit_closed_form_schmidt, dynamical_phase, dynamical_phase_mixed, pancharatnam_mixed,
    pancharatnam_pure, phase_deficit, principal_arg, wrap_phase, DeficitReport, LocalUnitarySet,
    PhaseResult, PhaseSlot, EPSILON_VIS, WITNESS_TOLERANCE,
};
pub use qstate::{
    coherent_state, number_phase_unitary, partial_trace, pauli_x, projector_phase_unitary,
    schmidt_decompose, FockSpec, HilbertShape, Operator, OperatorKind, SchmidtForm, StateVector,
};
