//! Analytic results for the three reference models, used as oracles for the
//! numerical machinery.
//!
//! * single pair X–A, probe along `θ = 0`;
//! * chain X–A–B with a common frequency `Ω`, probe `|↓⟩`;
//! * star X–{A, B}, probe `|→⟩`, with `|Ω|τ` a multiple of `2π`.

use std::f64::consts::SQRT_2;

use num_complex::Complex64 as C64;

/// `δ = √((Ω_X − Ω_A)²/4 + g²)`
pub fn single_qubit_detuning(omega_x: f64, omega_a: f64, g: f64) -> f64 {
    let d = omega_x - omega_a;
    (d * d / 4.0 + g * g).sqrt()
}

/// Eigenvalues of the projected operator of the single pair for `θ = 0`.
/// The first belongs to `|↑⟩_A`, the second to `|↓⟩_A`.
pub fn single_qubit_eigenvalues(omega_x: f64, omega_a: f64, g: f64, tau: f64) -> [C64; 2] {
    let delta = single_qubit_detuning(omega_x, omega_a, g);
    let sum = omega_x + omega_a;
    let (s, c) = (delta * tau).sin_cos();
    let up = C64::from_polar(1.0, -sum * tau);
    let down = C64::from_polar(1.0, -sum * tau / 2.0) * C64::new(c, -(omega_x - omega_a) / (2.0 * delta) * s);
    [up, down]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormPoint {
    pub fidelity: f64,
    pub probability: f64,
}

/// Fidelity to `|↑⟩_A` and success probability after `n` confirmations of
/// `|↑⟩_X`, starting from `|↑⟩⟨↑|_X ⊗ 𝟙_A/2`.
pub fn closed_form_single_qubit(omega_x: f64, omega_a: f64, g: f64, tau: f64, n: u32) -> ClosedFormPoint {
    let delta = single_qubit_detuning(omega_x, omega_a, g);
    let ratio = g / delta;
    let r = 1.0 - ratio * ratio * (delta * tau).sin().powi(2);
    let rn = r.powi(n as i32);
    ClosedFormPoint {
        fidelity: 1.0 / (1.0 + rn),
        probability: (1.0 + rn) / 2.0,
    }
}

/// `det ⟨φ_⊥|e^{−iHτ}|φ⟩` for the single pair; vanishes at `sin θ = 0`.
pub fn perpendicular_determinant(omega_x: f64, omega_a: f64, g: f64, theta: f64, tau: f64) -> C64 {
    let delta = single_qubit_detuning(omega_x, omega_a, g);
    let sum = omega_x + omega_a;
    let (s, c) = (delta * tau).sin_cos();
    let rotated = C64::from_polar(1.0, sum * tau / 2.0) * C64::new(c, (omega_x - omega_a) / (2.0 * delta) * s);
    let ratio = g / delta;
    let bracket = (C64::new(1.0, 0.0) - rotated).norm_sqr() + ratio * ratio * s * s;
    C64::from_polar(-0.25 * bracket * theta.sin().powi(2), -sum * tau)
}

/// `ḡ = √((g_XA² + g_AB²)/2)`
pub fn effective_coupling(g_xa: f64, g_ab: f64) -> f64 {
    ((g_xa * g_xa + g_ab * g_ab) / 2.0).sqrt()
}

/// `(cos χ, sin χ)` with `tan χ = g_AB / g_XA`.
fn mixing(g_xa: f64, g_ab: f64) -> (f64, f64) {
    let norm = (g_xa * g_xa + g_ab * g_ab).sqrt();
    (g_xa / norm, g_ab / norm)
}

/// Eigenvalues of the chain's projected operator on A–B for probe `|↓⟩_X`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Init2Eigenvalues {
    pub plus: C64,
    pub minus: C64,
    pub up_up: C64,
    pub down_down: C64,
}

impl Init2Eigenvalues {
    pub fn as_array(&self) -> [C64; 4] {
        [self.plus, self.minus, self.up_up, self.down_down]
    }

    /// `max(|λ₊|, |λ₋|, |λ↑↑|)`; `λ↓↓ = 1` is the target.
    pub fn max_subdominant(&self) -> f64 {
        self.plus.norm().max(self.minus.norm()).max(self.up_up.norm())
    }
}

pub fn init2_eigenvalues(g_xa: f64, g_ab: f64, omega: f64, tau: f64) -> Init2Eigenvalues {
    let (cos_chi, sin_chi) = mixing(g_xa, g_ab);
    let (s, c) = (effective_coupling(g_xa, g_ab) * tau / SQRT_2).sin_cos();
    let (cc, ss) = (cos_chi * cos_chi, sin_chi * sin_chi);
    let phase = C64::from_polar(1.0, -omega * tau);
    let root = C64::new(cc * cc * s * s - 4.0 * ss * c * c, 0.0).sqrt() * s;
    let centre = C64::new(c * c - ss * s * s, 0.0);
    Init2Eigenvalues {
        plus: phase * (centre - root),
        minus: phase * (centre + root),
        up_up: C64::from_polar(1.0 - 2.0 * cc * s * s, -2.0 * omega * tau),
        down_down: C64::new(1.0, 0.0),
    }
}

/// Boundary angle `ζ ∈ [0, π)` with `tan(ζ/2) = 2|sin χ|/cos²χ`. The fastest
/// initialization of the chain is at `√2 ḡ τ = ζ`.
pub fn zeta_angle(g_xa: f64, g_ab: f64) -> f64 {
    let (cos_chi, sin_chi) = mixing(g_xa, g_ab);
    2.0 * (2.0 * sin_chi.abs()).atan2(cos_chi * cos_chi)
}

/// Long-run success probability of the chain started in a thermal state,
/// `1/Z` with `Z` the partition function relative to `|↓↓↓⟩`.
pub fn init2_thermal_limit(omega: f64, gbar: f64, beta: f64) -> f64 {
    let z = 1.0
        + ((-beta * omega).exp() + (-2.0 * beta * omega).exp()) * (1.0 + 2.0 * (SQRT_2 * beta * gbar).cosh())
        + (-3.0 * beta * omega).exp();
    1.0 / z
}

/// Eigenvalues of the star's projected operator on A–B for probe `|→⟩_X`
/// when `|Ω|τ` is a multiple of `2π`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntangleEigenvalues {
    pub psi_minus: C64,
    pub phi_minus: C64,
    pub plus: C64,
    pub minus: C64,
}

impl EntangleEigenvalues {
    pub fn as_array(&self) -> [C64; 4] {
        [self.psi_minus, self.phi_minus, self.plus, self.minus]
    }

    /// `max(|λ_Φ⁻|, |λ₊|, |λ₋|)`; `λ_Ψ⁻ = 1` is the target.
    pub fn max_subdominant(&self) -> f64 {
        self.phi_minus.norm().max(self.plus.norm()).max(self.minus.norm())
    }
}

pub fn entangle_eigenvalues(g: f64, tau: f64) -> EntangleEigenvalues {
    let (s, c) = (g * tau / SQRT_2).sin_cos();
    let sign = if g < 0.0 { -1.0 } else { 1.0 };
    let root = C64::new(1.0 - 9.0 * c * c, 0.0).sqrt() * sign;
    let one = C64::new(1.0, 0.0);
    EntangleEigenvalues {
        psi_minus: one,
        phi_minus: C64::new(c * c, 0.0),
        plus: one - (C64::new(3.0 * s, 0.0) + root) * (0.5 * s),
        minus: one - (C64::new(3.0 * s, 0.0) - root) * (0.5 * s),
    }
}

/// Long-run success probability of the star at `Ω = 0` started in a thermal
/// state, `[8 cosh²(βg/√2)]⁻¹`.
pub fn entangle_thermal_limit(g: f64, beta: f64) -> f64 {
    1.0 / (8.0 * (beta * g / SQRT_2).cosh().powi(2))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn single_qubit_reference_point() {
        let tau = PI / (2.0 * single_qubit_detuning(5.0, 6.0, 1.0));
        let p = closed_form_single_qubit(5.0, 6.0, 1.0, tau, 4);
        assert!((p.fidelity - 0.998403).abs() < 1e-6);
        assert!((p.probability - 0.50080).abs() < 1e-6);
        // |λ₁| = |Ω_X − Ω_A| / 2δ at δτ = π/2
        let [l0, l1] = single_qubit_eigenvalues(5.0, 6.0, 1.0, tau);
        assert!((l0.norm() - 1.0).abs() < 1e-15);
        assert!((l1.norm() - 1.0 / 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_qubit_before_any_step() {
        // X already confirmed in |↑⟩ and A maximally mixed
        let p = closed_form_single_qubit(5.0, 6.0, 1.0, 0.7, 0);
        assert_eq!(p.fidelity, 0.5);
        assert_eq!(p.probability, 1.0);
    }

    #[test]
    fn resonant_single_qubit() {
        let p = closed_form_single_qubit(3.0, 3.0, 1.0, PI / 2.0, 1);
        assert!((p.fidelity - 1.0).abs() < 1e-15);
        assert!((p.probability - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zeta_for_equal_couplings() {
        let zeta = zeta_angle(1.0, 1.0);
        assert!((zeta - 2.0 * (2.0 * SQRT_2).atan()).abs() < 1e-15);
        assert!((zeta / PI - 0.7836).abs() < 1e-3);
        assert!(zeta_angle(1.0, 1e-9) < 1e-8);
    }

    #[test]
    fn init2_at_zeta() {
        let tau = zeta_angle(1.0, 1.0) / SQRT_2;
        let ev = init2_eigenvalues(1.0, 1.0, 2.0, tau);
        assert!((ev.up_up.norm() - 1.0 / 9.0).abs() < 1e-12);
        assert!((ev.plus.norm() - 1.0 / 3.0).abs() < 1e-6);
        assert!((ev.minus.norm() - 1.0 / 3.0).abs() < 1e-6);
        assert_eq!(ev.down_down, C64::new(1.0, 0.0));
    }

    #[test]
    fn init2_condition_boundary_and_short_times() {
        // odd multiples of π: one of λ± on the unit circle; even: both
        let ev = init2_eigenvalues(1.0, 1.0, 2.0, PI / SQRT_2);
        assert!((ev.max_subdominant() - 1.0).abs() < 1e-12);
        let ev = init2_eigenvalues(1.0, 1.0, 2.0, 2.0 * PI / SQRT_2);
        assert!((ev.plus.norm() - 1.0).abs() < 1e-12);
        assert!((ev.minus.norm() - 1.0).abs() < 1e-12);
        let ev = init2_eigenvalues(1.0, 1.0, 2.0, 1e-9);
        assert!(ev.as_array().iter().all(|z| (z.norm() - 1.0).abs() < 1e-8));
    }

    #[test]
    fn thermal_limits() {
        assert!((init2_thermal_limit(2.0, 1.0, 1.0) - 0.5478).abs() < 1e-4);
        assert!((entangle_thermal_limit(1.0, 0.0) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn entangle_reference_values() {
        let ev = entangle_eigenvalues(1.0, 0.5 * PI);
        assert!((ev.phi_minus.re - 0.1971).abs() < 1e-4);
        assert!((ev.plus.norm() - 0.4440).abs() < 1e-4);
        assert!((ev.minus.norm() - 0.4440).abs() < 1e-4);
        let ev = entangle_eigenvalues(1.0, 0.0);
        assert!(ev.as_array().iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-15));
        // gτ/√2 = π/2: one of λ± reaches the unit circle
        let ev = entangle_eigenvalues(1.0, PI / SQRT_2);
        assert!(ev.phi_minus.norm() < 1e-15);
        assert!((ev.plus.norm().max(ev.minus.norm()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perpendicular_determinant_vanishes_at_poles() {
        for &theta in &[0.0, PI] {
            assert!(perpendicular_determinant(5.0, 6.0, 1.0, theta, 0.83).norm() < 1e-15);
        }
        assert!(perpendicular_determinant(5.0, 6.0, 1.0, 1.0, 0.83).norm() > 1e-3);
        assert!(perpendicular_determinant(3.0, 3.0, 1.0, 1.0, PI).norm() < 1e-15);
    }
}
