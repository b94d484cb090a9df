use num_complex::Complex64 as C64;

use super::SpectralError;
use crate::linalg::{general_eigendecompose, ComplexMatrix, JordanBlock};

/// Default tolerance for degeneracy clustering and modulus comparisons.
pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-8;

/// Slack allowed above unit modulus before the eigenvalue bound counts as
/// violated.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralFlags {
    /// Exactly one eigenvalue attains the largest modulus.
    pub unique_max: bool,
    /// The dominant eigenvalue has a single eigenvector and no Jordan partner.
    pub nondegenerate_max: bool,
    /// `|λ₀| = 1` within tolerance: the success probability does not decay.
    pub optimal_modulus: bool,
    pub diagonalizable: bool,
}

impl SpectralFlags {
    /// Purification converges to a single pure state.
    pub fn purifies(&self) -> bool {
        self.unique_max && self.nondegenerate_max
    }

    pub fn all(&self) -> bool {
        self.unique_max && self.nondegenerate_max && self.optimal_modulus && self.diagonalizable
    }
}

/// Spectrum of a projected evolution operator ranked by modulus.
///
/// Finite dimension makes the spectrum discrete, so the purification
/// condition reduces to `unique_max ∧ nondegenerate_max`.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    /// Descending modulus. Members of one Jordan block are contiguous.
    pub eigenvalues: Vec<C64>,
    pub right_vectors: Vec<Vec<C64>>,
    pub left_vectors: Vec<Vec<C64>>,
    pub moduli: Vec<f64>,
    /// `|λ₁| / |λ₀|`, or 1 when the dominant eigenvalue is not unique.
    pub gap_ratio: f64,
    pub flags: SpectralFlags,
    pub tolerance: f64,
    pub blocks: Vec<JordanBlock>,
}

impl SpectralReport {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn dominant(&self) -> C64 {
        self.eigenvalues[0]
    }

    /// `|u₀⟩`
    pub fn target(&self) -> &[C64] {
        &self.right_vectors[0]
    }

    /// `⟨v₀|` as a row vector.
    pub fn dominant_left(&self) -> &[C64] {
        &self.left_vectors[0]
    }

    /// Largest modulus among eigenvalues other than the dominant one.
    pub fn subdominant_modulus(&self) -> f64 {
        self.moduli.get(1).copied().unwrap_or(0.0)
    }

    /// `|u₀⟩⟨v₀|`, the limit of `V^N / λ₀^N`.
    pub fn dominant_projector(&self) -> ComplexMatrix {
        let (u, v) = (self.target(), self.dominant_left());
        ComplexMatrix::from_fn(self.dim(), |i, j| u[i] * v[j])
    }
}

pub fn spectral_report(v: &ComplexMatrix, tol: f64) -> Result<SpectralReport, SpectralError> {
    let sys = general_eigendecompose(v, tol)?;
    let n = sys.dim();
    let moduli: Vec<f64> = sys.eigenvalues.iter().map(|z| z.norm()).collect();

    let unique_max = n == 1 || moduli[0] - moduli[1] > tol;
    let lead = sys.blocks[0];
    let lead_multiplicity: usize = sys
        .blocks
        .iter()
        .filter(|b| b.eigenvalue == lead.eigenvalue)
        .map(|b| b.len)
        .sum();
    let flags = SpectralFlags {
        unique_max,
        nondegenerate_max: lead_multiplicity == 1,
        optimal_modulus: (moduli[0] - 1.0).abs() <= tol,
        diagonalizable: sys.is_diagonalizable(),
    };
    let gap_ratio = if !unique_max {
        1.0
    } else if n == 1 {
        0.0
    } else {
        (moduli[1] / moduli[0]).clamp(0.0, 1.0)
    };
    Ok(SpectralReport {
        eigenvalues: sys.eigenvalues,
        right_vectors: sys.right_vectors,
        left_vectors: sys.left_vectors,
        moduli,
        gap_ratio,
        flags,
        tolerance: tol,
        blocks: sys.blocks,
    })
}

/// Every modulus is at most `1 + 1e−9`.
pub fn verify_bound(report: &SpectralReport) -> bool {
    report.moduli.iter().all(|&m| m <= 1.0 + BOUND_SLACK)
}
