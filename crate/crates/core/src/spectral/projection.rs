use num_complex::Complex64 as C64;

use super::SpectralError;
use crate::linalg::vector::norm;
use crate::linalg::ComplexMatrix;
use crate::qubits::{probe_orthogonal, probe_vector, ProbeState};

/// Partial matrix element `⟨bra|_X U |ket⟩_X` over the leading tensor factor.
///
/// `U` acts on `probe_dim × rest_dim`; the result acts on the rest.
pub fn cross_projection(u: &ComplexMatrix, bra: &[C64], ket: &[C64]) -> Result<ComplexMatrix, SpectralError> {
    let probe_dim = bra.len();
    if probe_dim == 0 || ket.len() != probe_dim || !u.dim().is_multiple_of(probe_dim) {
        return Err(SpectralError::DimensionMismatch {
            operator: u.dim(),
            probe: probe_dim,
        });
    }
    let rest = u.dim() / probe_dim;
    Ok(ComplexMatrix::from_fn(rest, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for (a, ba) in bra.iter().enumerate() {
            for (b, kb) in ket.iter().enumerate() {
                acc += ba.conj() * u[(a * rest + i, b * rest + j)] * kb;
            }
        }
        acc
    }))
}

/// Projected time-evolution operator `V = ⟨φ|_X U |φ⟩_X`.
pub fn projected_evolution(u: &ComplexMatrix, probe: &[C64], probe_dim: usize) -> Result<ComplexMatrix, SpectralError> {
    if probe.len() != probe_dim {
        return Err(SpectralError::DimensionMismatch {
            operator: u.dim(),
            probe: probe.len(),
        });
    }
    let n = norm(probe);
    if (n - 1.0).abs() > 1e-12 {
        return Err(SpectralError::ProbeNotNormalized(n));
    }
    cross_projection(u, probe, probe)
}

/// `V^⊥ = ⟨φ_⊥|_X U |φ⟩_X`; a zero eigenvalue of it is needed for any
/// eigenvalue of `V` to reach unit modulus.
pub fn perpendicular_projection(u: &ComplexMatrix, probe: &ProbeState) -> Result<ComplexMatrix, SpectralError> {
    cross_projection(u, &probe_orthogonal(probe), &probe_vector(probe))
}

/// Reduced operator `⟨φ|_X ρ |φ⟩_X` on the rest of the system (unnormalized).
pub fn project_state(rho: &ComplexMatrix, probe: &[C64]) -> Result<ComplexMatrix, SpectralError> {
    cross_projection(rho, probe, probe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitary_evolution;
    use crate::qubits::{build_hamiltonian, HamiltonianSpec};

    #[test]
    fn identity_projects_to_identity() {
        let u = ComplexMatrix::identity(8);
        let p = ProbeState::new(1.1, 0.4).unwrap();
        let v = projected_evolution(&u, &probe_vector(&p), 2).unwrap();
        assert!((&v - &ComplexMatrix::identity(4)).max_abs() < 1e-15);
        let perp = perpendicular_projection(&u, &p).unwrap();
        assert!(perp.max_abs() < 1e-15);
    }

    #[test]
    fn dimension_checks() {
        let u = ComplexMatrix::identity(6);
        let probe = probe_vector(&ProbeState::up());
        assert!(projected_evolution(&u, &probe, 2).is_ok());
        assert!(matches!(
            projected_evolution(&ComplexMatrix::identity(5), &probe, 2),
            Err(SpectralError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            projected_evolution(&u, &probe, 3),
            Err(SpectralError::DimensionMismatch { .. })
        ));
        let unnormalized = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        assert!(matches!(
            projected_evolution(&u, &unnormalized, 2),
            Err(SpectralError::ProbeNotNormalized(_))
        ));
    }

    #[test]
    fn single_pair_up_probe_is_diagonal() {
        let (wx, wa, g, tau) = (5.0, 6.0, 1.0, 0.9);
        let h = build_hamiltonian(&HamiltonianSpec::single_pair(wx, wa, g)).unwrap();
        let u = unitary_evolution(&h, tau).unwrap();
        let v = projected_evolution(&u, &probe_vector(&ProbeState::up()), 2).unwrap();
        let delta = ((wx - wa) * (wx - wa) / 4.0 + g * g).sqrt();
        let l0 = C64::from_polar(1.0, -(wx + wa) * tau);
        let l1 = C64::from_polar(1.0, -(wx + wa) * tau / 2.0)
            * C64::new((delta * tau).cos(), -(wx - wa) / (2.0 * delta) * (delta * tau).sin());
        assert!((v[(0, 0)] - l0).norm() < 1e-12);
        assert!((v[(1, 1)] - l1).norm() < 1e-12);
        assert!(v[(0, 1)].norm() < 1e-12 && v[(1, 0)].norm() < 1e-12);
    }
}
