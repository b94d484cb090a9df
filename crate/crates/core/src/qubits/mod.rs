//! Qubit networks: Hamiltonians, probe states, density matrices.
//!
//! Conventions: tensor factors are ordered X ⊗ A ⊗ B ⊗ … and each factor
//! uses the basis (|↑⟩, |↓⟩) = (index 0, index 1), so |↑↑…⟩ is basis state 0.

mod density;
mod hamiltonian;
mod states;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use density::{thermal_state, DensityMatrix, DENSITY_TOL};
pub use hamiltonian::{build_hamiltonian, excitation_number, is_up, HamiltonianSpec, Topology};
pub use states::{
    down, phi_minus, phi_plus, probe_orthogonal, probe_vector, product_state, psi_minus, psi_plus, standard_states, up,
    ProbeState, QubitLabel,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QubitError {
    #[error("invalid Hamiltonian spec: {0}")]
    InvalidSpec(String),
    #[error("angle {name} = {value} is out of range")]
    AngleOutOfRange { name: &'static str, value: f64 },
    #[error("inverse temperature must be finite and non-negative, got {0}")]
    InvalidTemperature(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("unknown qubit label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
