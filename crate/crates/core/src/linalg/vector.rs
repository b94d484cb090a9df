//! Helpers for state vectors represented as plain `Vec<Complex64>`.

use num_complex::Complex64 as C64;

/// ⟨a|b⟩, conjugate-linear in the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn scale(v: &[C64], s: C64) -> Vec<C64> {
    v.iter().map(|&z| z * s).collect()
}

pub fn normalized(v: &[C64]) -> Vec<C64> {
    let n = norm(v);
    scale(v, C64::new(1.0 / n, 0.0))
}

pub fn kron(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Index of the component with largest modulus; ties go to the lowest index.
pub fn dominant_index(v: &[C64]) -> usize {
    let mut best = 0;
    let mut best_mod = -1.0;
    for (i, z) in v.iter().enumerate() {
        // small slack so that numerically equal moduli resolve to the first index
        if z.norm() > best_mod * (1.0 + 1e-12) {
            best = i;
            best_mod = z.norm();
        }
    }
    best
}

/// Phase that makes the largest-modulus component real and positive.
pub fn canonical_phase(v: &[C64]) -> C64 {
    let z = v[dominant_index(v)];
    if z.norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        z.conj() / z.norm()
    }
}

/// Modified Gram-Schmidt residual of `v` against an orthonormal set, done twice
/// for stability.
pub fn orthogonal_residual(v: &[C64], basis: &[Vec<C64>]) -> Vec<C64> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for q in basis {
            let c = inner(q, &r);
            for (ri, qi) in r.iter_mut().zip(q) {
                *ri -= c * qi;
            }
        }
    }
    r
}
