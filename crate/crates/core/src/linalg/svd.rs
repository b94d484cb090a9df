//! One-sided (Hestenes) Jacobi SVD, used for numerical rank and null spaces.

use num_complex::Complex64 as C64;

use super::{ComplexMatrix, LinalgError};

const MAX_SWEEPS: usize = 80;

/// Singular values (descending) with the matching right singular vectors.
#[derive(Clone, Debug)]
pub struct RightSingular {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

pub fn right_singular(m: &ComplexMatrix) -> Result<RightSingular, LinalgError> {
    let n = m.dim();
    // column-major working copies
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols[p].iter().zip(&cols[q]).map(|(a, b)| a.conj() * b).sum();
                let gabs = gamma.norm();
                if gabs == 0.0 || gabs <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / gabs;
                let zeta = (beta - alpha) / (2.0 * gabs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for buf in [&mut cols, &mut v] {
                    let (lo, hi) = buf.split_at_mut(q);
                    for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let (x, y) = (*xp, *xq * phase.conj());
                        *xp = x * c - y * s;
                        *xq = x * s + y * c;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence { routine: "jacobi svd" });
    }

    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    Ok(RightSingular {
        values: order.iter().map(|&k| norms[k]).collect(),
        vectors: order.iter().map(|&k| v[k].clone()).collect(),
    })
}

/// Orthonormal basis of `{x : ‖Mx‖ ≤ rank_tol·‖M‖₂}`; empty when `M` has full
/// numerical rank.
pub fn nullspace(m: &ComplexMatrix, rank_tol: f64) -> Vec<Vec<C64>> {
    match right_singular(m) {
        Ok(svd) => {
            let cutoff = rank_tol * svd.values.first().copied().unwrap_or(0.0);
            svd.values
                .iter()
                .zip(svd.vectors)
                .filter(|(s, _)| **s <= cutoff)
                .map(|(_, v)| v)
                .collect()
        }
        Err(_) => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::norm;

    #[test]
    fn zero_matrix_nullspace_is_everything() {
        assert_eq!(nullspace(&ComplexMatrix::zeros(3), 1e-8).len(), 3);
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        assert!(nullspace(&ComplexMatrix::identity(3), 1e-8).is_empty());
    }

    #[test]
    fn rank_one_matrix() {
        let u = vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(2.0, 0.0)];
        let m = ComplexMatrix::outer(&u, &u);
        let ns = nullspace(&m, 1e-8);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(norm(&m.mul_vec(x)) < 1e-13);
            assert!((norm(x) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let m = ComplexMatrix::from_diagonal(&[C64::new(0.0, -3.0), C64::new(1.0, 0.0), C64::new(-2.0, 0.0)]);
        let svd = right_singular(&m).unwrap();
        assert_eq!(svd.values, vec![3.0, 2.0, 1.0]);
    }
}
