use num_complex::Complex64 as C64;

use super::ProtocolError;
use crate::linalg::{hermitian_eigendecompose, ComplexMatrix, HermitianEigenSystem, HERMITIAN_TOL};
use crate::qubits::{build_hamiltonian, probe_vector, HamiltonianSpec, ProbeState};
use crate::spectral::{perpendicular_projection, projected_evolution, spectral_report, SpectralReport};

/// A Hamiltonian diagonalized once, so the projected operator can be
/// produced cheaply for many values of `τ`.
#[derive(Clone, Debug)]
pub struct ProjectedModel {
    spec: HamiltonianSpec,
    probe: ProbeState,
    hamiltonian: ComplexMatrix,
    eigen: HermitianEigenSystem,
}

impl ProjectedModel {
    pub fn new(spec: &HamiltonianSpec, probe: ProbeState) -> Result<Self, ProtocolError> {
        let hamiltonian = build_hamiltonian(spec)?;
        let eigen = hermitian_eigendecompose(&hamiltonian, HERMITIAN_TOL)?;
        Ok(Self {
            spec: spec.clone(),
            probe,
            hamiltonian,
            eigen,
        })
    }

    pub fn spec(&self) -> &HamiltonianSpec {
        &self.spec
    }

    pub fn probe(&self) -> ProbeState {
        self.probe
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    /// `e^{−iHτ}`
    pub fn unitary(&self, tau: f64) -> ComplexMatrix {
        self.eigen.apply_function(|e| C64::from_polar(1.0, -e * tau))
    }

    pub fn projected(&self, tau: f64) -> Result<ComplexMatrix, ProtocolError> {
        Ok(projected_evolution(&self.unitary(tau), &probe_vector(&self.probe), 2)?)
    }

    pub fn perpendicular(&self, tau: f64) -> Result<ComplexMatrix, ProtocolError> {
        Ok(perpendicular_projection(&self.unitary(tau), &self.probe)?)
    }

    pub fn report(&self, tau: f64, tol: f64) -> Result<SpectralReport, ProtocolError> {
        Ok(spectral_report(&self.projected(tau)?, tol)?)
    }
}
