//! Right/left spectral decomposition of a general square matrix, including
//! Jordan chains for defective eigenvalues.
//!
//! Eigenvalues come from the Hessenberg QR iteration and are clustered with a
//! tolerance relative to the largest modulus. For every cluster the kernels
//! of `(V − λI)^j` are grown until their dimension reaches the algebraic
//! multiplicity; chains are then read off from the top level down so that
//! `V u⁽ᵏ⁾ = λ u⁽ᵏ⁾ + u⁽ᵏ⁻¹⁾` holds exactly in the stored basis. Left vectors
//! are the rows of the inverse of the assembled right-vector matrix.

use num_complex::Complex64 as C64;

use super::schur;
use super::svd::right_singular;
use super::vector::{canonical_phase, norm, orthogonal_residual, scale};
use super::{ComplexMatrix, LinalgError, MAX_DIM};

pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// A run of consecutive vectors `u⁽¹⁾ … u⁽ᵐ⁾` sharing one eigenvalue.
///
/// `u⁽¹⁾` is a true eigenvector; for `len > 1` the rest are generalized
/// eigenvectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JordanBlock {
    pub eigenvalue: C64,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub struct GeneralEigenSystem {
    /// One entry per right vector.
    pub eigenvalues: Vec<C64>,
    /// Columns `|u_n⟩`. Eigenvectors have unit norm; generalized vectors are
    /// scaled by their chain relation.
    pub right_vectors: Vec<Vec<C64>>,
    /// Row vectors `⟨v_n|` with `⟨v_m|u_n⟩ = δ_mn`.
    pub left_vectors: Vec<Vec<C64>>,
    /// Partition of the vectors into Jordan blocks (length-one blocks for
    /// ordinary eigenvectors).
    pub blocks: Vec<JordanBlock>,
}

impl GeneralEigenSystem {
    pub fn dim(&self) -> usize {
        self.right_vectors.len()
    }

    /// Blocks that needed generalized eigenvectors.
    pub fn chains(&self) -> impl Iterator<Item = &JordanBlock> {
        self.blocks.iter().filter(|b| b.len > 1)
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.chains().next().is_none()
    }

    /// `Σ_n |u_n⟩⟨v_n|`
    pub fn completeness(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut acc = ComplexMatrix::zeros(n);
        for (u, v) in self.right_vectors.iter().zip(&self.left_vectors) {
            for i in 0..n {
                for j in 0..n {
                    acc[(i, j)] += u[i] * v[j];
                }
            }
        }
        acc
    }

    /// Max |⟨v_m|u_n⟩ − δ_mn|
    pub fn biorthogonality_error(&self) -> f64 {
        let mut err = 0.0f64;
        for (m, v) in self.left_vectors.iter().enumerate() {
            for (n, u) in self.right_vectors.iter().enumerate() {
                let d: C64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                let target = if m == n { 1.0 } else { 0.0 };
                err = err.max((d - target).norm());
            }
        }
        err
    }

    /// Rebuilds `V = Σ (λ_n P_n + D_n)`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut acc = ComplexMatrix::zeros(n);
        for block in &self.blocks {
            for k in 0..block.len {
                let idx = block.start + k;
                let (u, v) = (&self.right_vectors[idx], &self.left_vectors[idx]);
                for i in 0..n {
                    for j in 0..n {
                        acc[(i, j)] += block.eigenvalue * u[i] * v[j];
                    }
                }
                if k > 0 {
                    let below = &self.right_vectors[idx - 1];
                    for i in 0..n {
                        for j in 0..n {
                            acc[(i, j)] += below[i] * v[j];
                        }
                    }
                }
            }
        }
        acc
    }
}

struct Cluster {
    eigenvalue: C64,
    multiplicity: usize,
}

/// Single-linkage grouping of the QR eigenvalues. Two eigenvalues join when
/// they differ by at most `tol · max|λ|`, or by at most `√tol · max|λ|` with
/// numerically parallel eigenvectors. The second rule catches defective
/// pairs, which rounding splits by `O(√ε)`.
fn cluster_eigenvalues(v: &ComplexMatrix, values: &[C64], degeneracy_tol: f64) -> Result<Vec<Cluster>, LinalgError> {
    let max_mod = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = degeneracy_tol * max_mod;
    let loose = degeneracy_tol.sqrt() * max_mod;
    let n = values.len();
    let mut vectors: Vec<Option<Vec<C64>>> = vec![None; n];
    let mut eigenvector = |i: usize| -> Result<Vec<C64>, LinalgError> {
        if vectors[i].is_none() {
            vectors[i] = Some(smallest_singular_vector(&v.shifted(values[i]))?);
        }
        Ok(vectors[i].clone().expect("just filled"))
    };
    let mut group: Vec<usize> = (0..n).collect();
    fn root(group: &mut [usize], mut i: usize) -> usize {
        while group[i] != i {
            group[i] = group[group[i]];
            i = group[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (values[i] - values[j]).norm();
            let linked = d <= threshold
                || (d <= loose && {
                    let (ui, uj) = (eigenvector(i)?, eigenvector(j)?);
                    let overlap: C64 = ui.iter().zip(&uj).map(|(a, b)| a.conj() * b).sum();
                    overlap.norm() >= 1.0 - degeneracy_tol
                });
            if linked {
                let (a, b) = (root(&mut group, i), root(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &z) in values.iter().enumerate() {
        let r = root(&mut group, i);
        match clusters.iter_mut().find(|(k, _)| *k == r) {
            Some((_, members)) => members.push(z),
            None => clusters.push((r, vec![z])),
        }
    }
    Ok(clusters
        .into_iter()
        .map(|(_, members)| Cluster {
            eigenvalue: members.iter().sum::<C64>() / members.len() as f64,
            multiplicity: members.len(),
        })
        .collect())
}

/// Orthonormal basis for the numerical kernel of `a`, capped at `limit`
/// vectors. The cutoff is `rank_tol · max(σ_max(a), scale)`; `scale` keeps
/// the cutoff meaningful when `a` is itself tiny, as for `V − λI` with
/// `V ≈ λI`.
fn kernel(a: &ComplexMatrix, rank_tol: f64, scale: f64, limit: usize) -> Result<Vec<Vec<C64>>, LinalgError> {
    let svd = right_singular(a)?;
    let cutoff = rank_tol * svd.values.first().copied().unwrap_or(0.0).max(scale);
    let count = svd.values.iter().filter(|&&s| s <= cutoff).count().min(limit);
    let n = svd.values.len();
    Ok(svd.vectors[n - count..].to_vec())
}

fn smallest_singular_vector(a: &ComplexMatrix) -> Result<Vec<C64>, LinalgError> {
    let svd = right_singular(a)?;
    Ok(svd.vectors.last().cloned().expect("non-empty matrix"))
}

/// Builds the chains of one cluster. Each returned chain is ordered
/// eigenvector first.
fn cluster_chains(v: &ComplexMatrix, cluster: &Cluster, rank_tol: f64) -> Result<Vec<Vec<Vec<C64>>>, LinalgError> {
    let a = v.shifted(cluster.eigenvalue);
    let m = cluster.multiplicity;
    if m == 1 {
        return Ok(vec![vec![smallest_singular_vector(&a)?]]);
    }

    // nested kernels N_1 ⊂ N_2 ⊂ … of (V − λI)^j
    let mut kernels: Vec<Vec<Vec<C64>>> = Vec::new();
    let mut power = a.clone();
    let unit = v.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut level_scale = unit;
    loop {
        let k = kernel(&power, rank_tol, level_scale, m)?;
        let prev = kernels.last().map_or(0, |p| p.len());
        if k.len() <= prev {
            return Err(LinalgError::NumericallyDefective {
                eigenvalue: cluster.eigenvalue,
                multiplicity: m,
                found: prev,
            });
        }
        let done = k.len() == m;
        kernels.push(k);
        if done {
            break;
        }
        power = &power * &a;
        level_scale *= unit;
    }

    let levels = kernels.len();
    // vectors already claimed at each level by chains that started higher up
    let mut claimed: Vec<Vec<Vec<C64>>> = vec![Vec::new(); levels + 1];
    let mut chains = Vec::new();
    for level in (1..=levels).rev() {
        let lower_dim = if level >= 2 { kernels[level - 2].len() } else { 0 };
        let fresh = kernels[level - 1].len() as isize - lower_dim as isize - claimed[level].len() as isize;
        if fresh < 0 {
            return Err(LinalgError::NumericallyDefective {
                eigenvalue: cluster.eigenvalue,
                multiplicity: m,
                found: chains.iter().map(|c: &Vec<Vec<C64>>| c.len()).sum(),
            });
        }
        // orthonormal span of N_{level-1} plus claimed vectors at this level
        let mut span: Vec<Vec<C64>> = if level >= 2 {
            kernels[level - 2].clone()
        } else {
            Vec::new()
        };
        for c in &claimed[level] {
            let r = orthogonal_residual(c, &span);
            let rn = norm(&r);
            if rn > 1e-12 {
                span.push(scale(&r, C64::new(1.0 / rn, 0.0)));
            }
        }
        for _ in 0..fresh {
            let best = kernels[level - 1]
                .iter()
                .map(|b| orthogonal_residual(b, &span))
                .max_by(|x, y| norm(x).total_cmp(&norm(y)))
                .expect("kernel level is non-empty");
            let bn = norm(&best);
            if bn < 1e-6 {
                return Err(LinalgError::NumericallyDefective {
                    eigenvalue: cluster.eigenvalue,
                    multiplicity: m,
                    found: chains.iter().map(|c: &Vec<Vec<C64>>| c.len()).sum(),
                });
            }
            let top = scale(&best, C64::new(1.0 / bn, 0.0));
            span.push(top.clone());

            // chain top-down: top, A·top, …, A^{level-1}·top
            let mut down = vec![top];
            for _ in 1..level {
                let next = a.mul_vec(down.last().unwrap());
                down.push(next);
            }
            for (l, vec) in down.iter().enumerate().skip(1) {
                claimed[level - l].push(vec.clone());
            }
            down.reverse();
            // normalize so the eigenvector has unit norm and canonical phase
            let head = &down[0];
            let hn = norm(head);
            if hn < 1e-300 {
                return Err(LinalgError::NumericallyDefective {
                    eigenvalue: cluster.eigenvalue,
                    multiplicity: m,
                    found: 0,
                });
            }
            let factor = canonical_phase(head) / hn;
            chains.push(down.iter().map(|x| scale(x, factor)).collect());
        }
    }
    let total: usize = chains.iter().map(|c| c.len()).sum();
    if total != m {
        return Err(LinalgError::NumericallyDefective {
            eigenvalue: cluster.eigenvalue,
            multiplicity: m,
            found: total,
        });
    }
    // longest chains first for a deterministic layout
    chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
    Ok(chains)
}

/// Right/left eigen-decomposition of an arbitrary square matrix.
///
/// Eigenvalues within `degeneracy_tol · max|λ|` of each other, or
/// numerically defective pairs slightly further apart, are treated as one
/// cluster. Blocks are ordered by descending modulus, ties broken by
/// argument.
pub fn general_eigendecompose(v: &ComplexMatrix, degeneracy_tol: f64) -> Result<GeneralEigenSystem, LinalgError> {
    general_eigendecompose_with(v, degeneracy_tol, DEFAULT_RANK_TOL)
}

pub fn general_eigendecompose_with(
    v: &ComplexMatrix,
    degeneracy_tol: f64,
    rank_tol: f64,
) -> Result<GeneralEigenSystem, LinalgError> {
    let n = v.dim();
    if n > MAX_DIM {
        return Err(LinalgError::TooLarge { dim: n, max: MAX_DIM });
    }
    let values = schur::eigenvalues(v)?;
    let mut clusters = cluster_eigenvalues(v, &values, degeneracy_tol)?;
    clusters.sort_by(|x, y| {
        y.eigenvalue
            .norm()
            .total_cmp(&x.eigenvalue.norm())
            .then(x.eigenvalue.arg().total_cmp(&y.eigenvalue.arg()))
    });

    let mut eigenvalues = Vec::with_capacity(n);
    let mut right_vectors = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for cluster in &clusters {
        for chain in cluster_chains(v, cluster, rank_tol)? {
            let start = right_vectors.len();
            let len = chain.len();
            blocks.push(JordanBlock {
                eigenvalue: cluster.eigenvalue,
                start,
                len,
            });
            for (k, u) in chain.into_iter().enumerate() {
                eigenvalues.push(cluster.eigenvalue);
                if k == 0 {
                    // plain eigenvector: unit norm, canonical phase
                    let un = norm(&u);
                    let u = scale(&u, canonical_phase(&u) / un);
                    right_vectors.push(u);
                } else {
                    right_vectors.push(u);
                }
            }
        }
    }

    let r = ComplexMatrix::from_columns(&right_vectors);
    let inv = r.inverse().map_err(|_| LinalgError::NumericallyDefective {
        eigenvalue: clusters.first().map_or(C64::new(0.0, 0.0), |c| c.eigenvalue),
        multiplicity: n,
        found: n,
    })?;
    let left_vectors: Vec<Vec<C64>> = (0..n).map(|i| inv.row(i).to_vec()).collect();

    let sys = GeneralEigenSystem {
        eigenvalues,
        right_vectors,
        left_vectors,
        blocks,
    };
    // a nearly singular right-vector matrix means the clustering missed a
    // defective pair
    let scale_v = v.max_abs().max(1.0);
    if (&sys.reconstruct() - v).max_abs() > 1e-6 * scale_v {
        return Err(LinalgError::NumericallyDefective {
            eigenvalue: sys.eigenvalues.first().copied().unwrap_or_default(),
            multiplicity: n,
            found: n,
        });
    }
    Ok(sys)
}
