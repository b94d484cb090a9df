use num_complex::Complex64 as C64;

use super::QubitError;
use crate::linalg::ComplexMatrix;

/// Interaction graph of the qubit network. Qubit 0 is always the probe X.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    /// Probe X coupled to a single qubit A.
    SinglePair,
    /// Nearest-neighbour chain X – A – B – …
    Chain,
    /// Probe X coupled to every other qubit, which do not couple among themselves.
    Star,
}

/// Declarative description of an XY-exchange qubit network:
/// `H = Σ_k Ω_k (1 + σ₃ᵏ)/2 + Σ_(k,l) g_kl (σ₊ᵏσ₋ˡ + σ₋ᵏσ₊ˡ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    pub topology: Topology,
    /// Ω_X, Ω_A, Ω_B, …
    pub frequencies: Vec<f64>,
    /// X–A, A–B, … for a chain; X–A, X–B, … for a star.
    pub couplings: Vec<f64>,
}

impl HamiltonianSpec {
    pub fn single_pair(omega_x: f64, omega_a: f64, g: f64) -> Self {
        Self {
            topology: Topology::SinglePair,
            frequencies: vec![omega_x, omega_a],
            couplings: vec![g],
        }
    }

    pub fn chain(frequencies: Vec<f64>, couplings: Vec<f64>) -> Self {
        Self {
            topology: Topology::Chain,
            frequencies,
            couplings,
        }
    }

    pub fn star(frequencies: Vec<f64>, couplings: Vec<f64>) -> Self {
        Self {
            topology: Topology::Star,
            frequencies,
            couplings,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.frequencies.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits()
    }

    /// Dimension of the unmeasured part A(+B…).
    pub fn rest_dim(&self) -> usize {
        self.dim() / 2
    }

    pub fn validate(&self) -> Result<(), QubitError> {
        let n = self.frequencies.len();
        let invalid = |reason: String| Err(QubitError::InvalidSpec(reason));
        match self.topology {
            Topology::SinglePair if n != 2 => return invalid(format!("single_pair needs 2 frequencies, got {n}")),
            _ if n < 2 => return invalid(format!("need at least 2 qubits, got {n}")),
            _ if n > 4 => return invalid(format!("at most 4 qubits are supported, got {n}")),
            _ => {}
        }
        if self.couplings.len() != n - 1 {
            return invalid(format!(
                "{n} qubits need {} couplings, got {}",
                n - 1,
                self.couplings.len()
            ));
        }
        if let Some(w) = self.frequencies.iter().find(|w| !w.is_finite()) {
            return invalid(format!("non-finite frequency {w}"));
        }
        for (k, g) in self.couplings.iter().enumerate() {
            if !g.is_finite() {
                return invalid(format!("non-finite coupling {g} at position {k}"));
            }
            if *g == 0.0 {
                return invalid(format!("coupling at position {k} is zero"));
            }
        }
        Ok(())
    }

    /// Coupled pairs `(k, l, g_kl)` as qubit indices.
    pub fn bonds(&self) -> Vec<(usize, usize, f64)> {
        self.couplings
            .iter()
            .enumerate()
            .map(|(k, &g)| match self.topology {
                Topology::SinglePair | Topology::Chain => (k, k + 1, g),
                Topology::Star => (0, k + 1, g),
            })
            .collect()
    }

    /// √(Σ g²), the splitting scale of the one-excitation sector (√2·ḡ for
    /// three qubits, δ for the resonant pair).
    pub fn coupling_norm(&self) -> f64 {
        self.couplings.iter().map(|g| g * g).sum::<f64>().sqrt()
    }
}

/// Whether qubit `k` (0 = X) is up in basis state `s`. Up is bit value 0 and
/// qubit 0 is the most significant bit.
pub fn is_up(s: usize, k: usize, n: usize) -> bool {
    (s >> (n - 1 - k)) & 1 == 0
}

/// Builds `H_tot` in the computational basis, tensor order X ⊗ A ⊗ B ⊗ ….
pub fn build_hamiltonian(spec: &HamiltonianSpec) -> Result<ComplexMatrix, QubitError> {
    spec.validate()?;
    let n = spec.num_qubits();
    let dim = spec.dim();
    let mut h = ComplexMatrix::zeros(dim);
    for s in 0..dim {
        let energy: f64 = (0..n).filter(|&k| is_up(s, k, n)).map(|k| spec.frequencies[k]).sum();
        h[(s, s)] = C64::new(energy, 0.0);
    }
    for (k, l, g) in spec.bonds() {
        let mask = (1 << (n - 1 - k)) | (1 << (n - 1 - l));
        for s in 0..dim {
            // σ₊ᵏσ₋ˡ + h.c. swaps an excitation between k and l
            if is_up(s, k, n) != is_up(s, l, n) {
                h[(s ^ mask, s)] += C64::new(g, 0.0);
            }
        }
    }
    Ok(h)
}

/// Total excitation number `Σ_k (1 + σ₃ᵏ)/2`.
pub fn excitation_number(num_qubits: usize) -> ComplexMatrix {
    let dim = 1 << num_qubits;
    ComplexMatrix::from_fn(dim, |i, j| {
        if i == j {
            let ups = (0..num_qubits).filter(|&k| is_up(i, k, num_qubits)).count();
            C64::new(ups as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}
