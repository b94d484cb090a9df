//! Repeated-measurement purification: simulation, closed forms, condition
//! predicates and `τ` search.

mod closed_form;
mod conditions;
mod config;
mod model;
mod optimize;
mod simulate;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::qubits::QubitError;
use crate::spectral::SpectralError;

pub use closed_form::{
    closed_form_single_qubit, effective_coupling, entangle_eigenvalues, entangle_thermal_limit, init2_eigenvalues,
    init2_thermal_limit, perpendicular_determinant, single_qubit_detuning, single_qubit_eigenvalues, zeta_angle,
    ClosedFormPoint, EntangleEigenvalues, Init2Eigenvalues,
};
pub use conditions::{
    condition_entangle, condition_init2, condition_single, degenerate_perpendicular_clause, ANGLE_TOL,
};
pub use config::{InitialState, RunConfig};
pub use model::ProjectedModel;
pub use optimize::{optimize_tau, sweep_spectrum, SweepPoint, TauGrid, TauOptimum};
pub use simulate::{
    asymptotic_probability, run_purification, AsymptoticProbability, PurificationTrace, TraceWarning,
    MIN_PROJECTION_PROBABILITY,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid tau grid: {0}")]
    InvalidGrid(String),
    #[error("probability of the first confirmation is {0:e}, too small to condition on")]
    ZeroProjectionProbability(f64),
    #[error("conditional state vanished after {step} confirmations")]
    ConditionalCollapse { step: usize },
    #[error("the largest-modulus eigenvalue is not unique; no purification target")]
    NoUniqueTarget,
    #[error("none of the {points} grid points satisfies the purification conditions")]
    NoFeasiblePoint { points: usize },
    #[error(transparent)]
    Qubit(#[from] QubitError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
