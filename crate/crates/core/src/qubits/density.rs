use num_complex::Complex64 as C64;

use super::QubitError;
use crate::linalg::{hermitian_eigendecompose, ComplexMatrix, HERMITIAN_TOL};

/// Tolerance for the Hermiticity, trace and positivity checks.
pub const DENSITY_TOL: f64 = 1e-10;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, QubitError> {
        let herm = matrix.hermiticity_error();
        if herm > DENSITY_TOL {
            return Err(QubitError::InvalidDensity(format!(
                "not Hermitian (violation {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(QubitError::InvalidDensity(format!("trace {tr} != 1")));
        }
        let sys = hermitian_eigendecompose(&matrix, DENSITY_TOL)?;
        if let Some(&min) = sys.eigenvalues.first() {
            if min < -DENSITY_TOL {
                return Err(QubitError::InvalidDensity(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self { matrix })
    }

    /// Normalizes a positive operator by its trace.
    pub fn from_unnormalized(matrix: ComplexMatrix) -> Result<Self, QubitError> {
        let tr = matrix.trace().re;
        if tr.is_nan() || tr <= 0.0 {
            return Err(QubitError::InvalidDensity(format!("trace {tr} is not positive")));
        }
        Self::new(matrix.scale_real(1.0 / tr))
    }

    pub fn pure(state: &[C64]) -> Result<Self, QubitError> {
        Self::from_unnormalized(ComplexMatrix::outer(state, state))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `⟨ψ|ρ|ψ⟩`
    pub fn expectation(&self, state: &[C64]) -> f64 {
        crate::linalg::vector::inner(state, &self.matrix.mul_vec(state)).re
    }

    /// `ρ ⊗ σ`
    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

/// `e^{−βH} / Tr e^{−βH}` for finite `β ≥ 0`.
pub fn thermal_state(h: &ComplexMatrix, beta: f64) -> Result<DensityMatrix, QubitError> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(QubitError::InvalidTemperature(beta));
    }
    let sys = hermitian_eigendecompose(h, HERMITIAN_TOL)?;
    let ground = sys.eigenvalues.first().copied().unwrap_or(0.0);
    // shift by the ground energy to keep the exponentials bounded
    let unnormalized = sys.apply_function(|e| C64::new((-beta * (e - ground)).exp(), 0.0));
    DensityMatrix::from_unnormalized(unnormalized)
}
