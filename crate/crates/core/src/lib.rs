//! Purification of qubits by repeated projective measurements on a probe.
//!
//! A probe qubit X is coupled to the rest of a small network and measured in
//! a fixed direction every `τ`. Conditioned on all outcomes agreeing, the rest
//! evolves under `V = ⟨φ|_X e^{−iHτ} |φ⟩_X`, and `V^N` drives it towards the
//! eigenvector of `V` with the largest modulus.
//!
//! * [`linalg`]: dense complex matrices and eigensolvers.
//! * [`qubits`]: Hamiltonians, probes and density matrices.
//! * [`spectral`]: the projected operator and its spectral report.
//! * [`protocols`]: simulation of the measurement sequence, closed forms and
//!   `τ` optimization.

pub mod exec;
pub mod linalg;
pub mod protocols;
pub mod qubits;
pub mod spectral;

pub use exec::Execution;
