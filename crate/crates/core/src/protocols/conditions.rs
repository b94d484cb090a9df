//! Predicates for optimal purification in the reference models.
//!
//! Tolerances apply to the trigonometric quantity that must vanish (or must
//! not), never to `τ` itself.

use std::f64::consts::SQRT_2;

use num_complex::Complex64 as C64;

use super::single_qubit_detuning;

pub const ANGLE_TOL: f64 = 1e-9;

fn vanishes(x: f64) -> bool {
    x.abs() <= ANGLE_TOL
}

/// Single pair: probe along the quantization axis and `δτ ∉ πℤ`.
pub fn condition_single(theta: f64, delta: f64, tau: f64) -> bool {
    vanishes(theta.sin()) && !vanishes((delta * tau).sin())
}

/// Chain initialization: `√2 ḡ τ ∉ πℤ`.
pub fn condition_init2(gbar: f64, tau: f64) -> bool {
    !vanishes((SQRT_2 * gbar * tau).sin())
}

/// Star entanglement: `|Ω|τ ∈ 2πℤ`, probe off the poles and `|g|τ/√2 ∉ (π/2)ℤ`.
pub fn condition_entangle(omega: f64, tau: f64, g: f64, theta: f64) -> bool {
    vanishes((omega * tau / 2.0).sin()) && !vanishes(theta.sin()) && !vanishes((SQRT_2 * g * tau).sin())
}

/// Single pair: the second way for the perpendicular operator to become
/// singular, `cos δτ = ±1` together with `e^{i(Ω_X+Ω_A)τ/2}` of the same sign,
/// in which case the projected operator is the identity.
pub fn degenerate_perpendicular_clause(omega_x: f64, omega_a: f64, g: f64, tau: f64) -> bool {
    let (s, c) = (single_qubit_detuning(omega_x, omega_a, g) * tau).sin_cos();
    let phase = C64::from_polar(1.0, (omega_x + omega_a) * tau / 2.0);
    vanishes(s) && (phase * c - 1.0).norm() <= ANGLE_TOL
}
