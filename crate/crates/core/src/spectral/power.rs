use num_complex::Complex64 as C64;

use super::SpectralReport;
use crate::linalg::ComplexMatrix;

fn binomial(n: u32, r: u32) -> f64 {
    (0..r).fold(1.0, |acc, k| acc * (n - k) as f64 / (k + 1) as f64)
}

/// `V^N` assembled from the Jordan data of `report`:
/// `Σ_blocks Σ_r C(N,r) λ^{N−r} Σ_{k≥r} |u⁽ᵏ⁻ʳ⁾⟩⟨v⁽ᵏ⁾|`.
pub fn power_via_spectrum(report: &SpectralReport, n: u32) -> ComplexMatrix {
    let dim = report.dim();
    let mut acc = ComplexMatrix::zeros(dim);
    for block in &report.blocks {
        let top = (n as usize).min(block.len - 1);
        for r in 0..=top {
            // powu(0) is 1 even for λ = 0
            let coeff = block.eigenvalue.powu(n - r as u32) * binomial(n, r as u32);
            if coeff == C64::new(0.0, 0.0) {
                continue;
            }
            for k in r..block.len {
                let u = &report.right_vectors[block.start + k - r];
                let v = &report.left_vectors[block.start + k];
                for i in 0..dim {
                    let ui = coeff * u[i];
                    for j in 0..dim {
                        acc[(i, j)] += ui * v[j];
                    }
                }
            }
        }
    }
    acc
}
