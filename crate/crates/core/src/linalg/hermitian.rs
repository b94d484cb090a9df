use num_complex::Complex64 as C64;

use super::vector::{canonical_phase, scale};
use super::{ComplexMatrix, LinalgError, MAX_DIM};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `H = U diag(λ) U†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigenSystem {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenSystem {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `U f(diag λ) U†`
    pub fn apply_function(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let fl: Vec<C64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| u[(i, k)] * fl[k] * u[(j, k)].conj()).sum())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_function(|l| C64::new(l, 0.0))
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot element, then applies
/// the real symmetric Jacobi rotation to the resulting 2×2 block.
pub fn hermitian_eigendecompose(h: &ComplexMatrix, tol: f64) -> Result<HermitianEigenSystem, LinalgError> {
    let n = h.dim();
    if n > MAX_DIM {
        return Err(LinalgError::TooLarge { dim: n, max: MAX_DIM });
    }
    let violation = h.hermiticity_error();
    if violation > tol {
        return Err(LinalgError::NotHermitian { violation, tol });
    }

    // symmetrize so that tiny anti-Hermitian noise does not leak into the result
    let mut a = ComplexMatrix::from_fn(n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);
    let total: f64 = a.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * total {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence {
            routine: "hermitian jacobi",
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let columns: Vec<Vec<C64>> = order
        .iter()
        .map(|&k| {
            let col = v.column(k);
            scale(&col, canonical_phase(&col))
        })
        .collect();
    Ok(HermitianEigenSystem {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_columns(&columns),
    })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    let b = a[(p, q)];
    let babs = b.norm();
    if babs < f64::MIN_POSITIVE {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if babs <= 1e-18 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = b / babs; // e^{iα}
    let theta = (aqq - app) / (2.0 * babs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iα}) · [[c, s], [-s, c]]
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    for r in 0..n {
        let (x, y) = (a[(r, p)], a[(r, q)]);
        a[(r, p)] = x * g_pp + y * g_qp;
        a[(r, q)] = x * g_pq + y * g_qq;
    }
    for col in 0..n {
        let (x, y) = (a[(p, col)], a[(q, col)]);
        a[(p, col)] = g_pp.conj() * x + g_qp.conj() * y;
        a[(q, col)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for r in 0..n {
        let (x, y) = (v[(r, p)], v[(r, q)]);
        v[(r, p)] = x * g_pp + y * g_qp;
        v[(r, q)] = x * g_pq + y * g_qq;
    }
}

/// `exp(−iHt)` through the eigen-decomposition of `H`.
pub fn unitary_evolution(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, LinalgError> {
    let sys = hermitian_eigendecompose(h, super::HERMITIAN_TOL)?;
    Ok(sys.apply_function(|e| C64::from_polar(1.0, -e * t)))
}
