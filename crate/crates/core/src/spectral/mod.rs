//! Spectral analysis of the projected evolution `V = ⟨φ|_X e^{−iHτ} |φ⟩_X`.

mod power;
mod projection;
mod report;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use power::power_via_spectrum;
pub use projection::{cross_projection, perpendicular_projection, project_state, projected_evolution};
pub use report::{spectral_report, verify_bound, SpectralFlags, SpectralReport, BOUND_SLACK, DEFAULT_SPECTRAL_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("operator of dimension {operator} is incompatible with a probe of dimension {probe}")]
    DimensionMismatch { operator: usize, probe: usize },
    #[error("probe vector has norm {0}, expected 1")]
    ProbeNotNormalized(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
