//! Eigenvalues of a general complex matrix via Hessenberg reduction and
//! single-shift QR iteration.

use num_complex::Complex64 as C64;

use super::{ComplexMatrix, LinalgError};

const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// Unitary similarity to upper Hessenberg form (Householder reflections).
fn hessenberg(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x.clone();
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H ← (I − 2vv†) H on rows k+1..n
        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(a, va)| va.conj() * h[(k + 1 + a, j)]).sum();
            for (a, va) in v.iter().enumerate() {
                h[(k + 1 + a, j)] -= 2.0 * va * s;
            }
        }
        // H ← H (I − 2vv†) on columns k+1..n
        for i in 0..n {
            let s: C64 = v.iter().enumerate().map(|(a, va)| h[(i, k + 1 + a)] * va).sum();
            for (a, va) in v.iter().enumerate() {
                h[(i, k + 1 + a)] -= 2.0 * s * va.conj();
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    h
}

/// Givens pair (c real, s complex) with `[[c, s], [-s̄, c]] · [a, b]ᵀ = [r, 0]ᵀ`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if a.norm() == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// All eigenvalues of `m`, in the order they deflate.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>, LinalgError> {
    let n = m.dim();
    let mut h = hessenberg(m);
    let mut eig = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let scale = h.max_abs();
    let mut hi = n - 1;
    let mut iter = 0usize;
    while hi > 0 {
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let reference = if diag == 0.0 { scale } else { diag };
            if sub <= f64::EPSILON * reference {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(LinalgError::NoConvergence {
                routine: "hessenberg qr",
            });
        }
        let mu = if iter.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.25 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in lo..=hi {
            h[(k, k)] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = C64::new(0.0, 0.0);
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            for i in lo..=(k + 1).min(hi) {
                let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += mu;
        }
    }
    eig[0] = h[(0, 0)];
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn hessenberg_preserves_spectrum_structure() {
        let m = ComplexMatrix::from_fn(5, |i, j| {
            C64::new((i * 3 + j) as f64 % 7.0, (i as f64) - (j as f64) * 0.5)
        });
        let h = hessenberg(&m);
        for i in 2..5 {
            for j in 0..(i - 1) {
                assert_eq!(h[(i, j)], C64::new(0.0, 0.0));
            }
        }
        assert!((h.trace() - m.trace()).norm() < 1e-12);
        assert!((h.frobenius_norm() - m.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn triangular_matrix_eigenvalues_are_diagonal() {
        let m = ComplexMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 1.0)],
            vec![C64::new(0.0, 0.0), C64::new(0.0, 0.5), C64::new(-1.0, 0.0)],
            vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-2.0, 0.0)],
        ])
        .unwrap();
        let e = sorted(eigenvalues(&m).unwrap());
        assert_eq!(e, vec![C64::new(-2.0, 0.0), C64::new(0.0, 0.5), C64::new(1.0, 0.0)]);
    }

    #[test]
    fn rotation_matrix_has_unimodular_eigenvalues() {
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let m = ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap();
        let e = sorted(eigenvalues(&m).unwrap());
        assert!((e[0] - C64::new(c, -s)).norm() < 1e-14);
        assert!((e[1] - C64::new(c, s)).norm() < 1e-14);
    }

    #[test]
    fn companion_matrix_roots() {
        // x³ − 6x² + 11x − 6 = (x−1)(x−2)(x−3)
        let m = ComplexMatrix::from_real_rows(&[&[6.0, -11.0, 6.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        let e = sorted(eigenvalues(&m).unwrap());
        for (k, z) in e.iter().enumerate() {
            assert!((z - C64::new(k as f64 + 1.0, 0.0)).norm() < 1e-11, "{z}");
        }
    }
}
