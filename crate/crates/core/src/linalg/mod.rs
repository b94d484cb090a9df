//! Dense complex linear algebra for Hilbert spaces of at most a handful of
//! qubits.

mod general;
mod hermitian;
mod matrix;
mod schur;
mod svd;
pub mod vector;

use num_complex::Complex64 as C64;
use thiserror::Error;

pub use general::{
    general_eigendecompose, general_eigendecompose_with, GeneralEigenSystem, JordanBlock, DEFAULT_DEGENERACY_TOL,
    DEFAULT_RANK_TOL,
};
pub use hermitian::{hermitian_eigendecompose, unitary_evolution, HermitianEigenSystem};
pub use matrix::ComplexMatrix;
pub use schur::eigenvalues;
pub use svd::{nullspace, right_singular, RightSingular};

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 16;

/// Hermiticity tolerance applied when a generator is exponentiated.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("matrix is not Hermitian: max |H - H^dag| = {violation:e} > {tol:e}")]
    NotHermitian { violation: f64, tol: f64 },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("{routine} did not converge")]
    NoConvergence { routine: &'static str },
    #[error(
        "could not build Jordan chains for eigenvalue {eigenvalue} \
         (multiplicity {multiplicity}, found {found} independent vectors)"
    )]
    NumericallyDefective {
        eigenvalue: C64,
        multiplicity: usize,
        found: usize,
    },
}
