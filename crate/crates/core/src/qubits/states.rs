use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use super::QubitError;
use crate::linalg::vector::kron;

/// Measured probe direction `|φ⟩ = e^{−iφ/2}cos(θ/2)|↑⟩ + e^{iφ/2}sin(θ/2)|↓⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeState {
    pub theta: f64,
    pub phi: f64,
}

impl ProbeState {
    pub fn new(theta: f64, phi: f64) -> Result<Self, QubitError> {
        let slack = 1e-12;
        if !(theta.is_finite() && (-slack..=PI + slack).contains(&theta)) {
            return Err(QubitError::AngleOutOfRange {
                name: "theta",
                value: theta,
            });
        }
        if !(phi.is_finite() && (-slack..2.0 * PI).contains(&phi)) {
            return Err(QubitError::AngleOutOfRange {
                name: "phi",
                value: phi,
            });
        }
        Ok(Self { theta, phi })
    }

    pub fn up() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn down() -> Self {
        Self { theta: PI, phi: 0.0 }
    }

    /// `|→⟩ = (|↑⟩ + |↓⟩)/√2`
    pub fn right() -> Self {
        Self {
            theta: PI / 2.0,
            phi: 0.0,
        }
    }

    pub fn vector(&self) -> Vec<C64> {
        probe_vector(self)
    }

    pub fn orthogonal(&self) -> Vec<C64> {
        probe_orthogonal(self)
    }
}

pub fn probe_vector(p: &ProbeState) -> Vec<C64> {
    let (s, c) = (p.theta / 2.0).sin_cos();
    vec![C64::from_polar(c, -p.phi / 2.0), C64::from_polar(s, p.phi / 2.0)]
}

/// `|φ_⊥⟩ = e^{−iφ/2}sin(θ/2)|↑⟩ − e^{iφ/2}cos(θ/2)|↓⟩`
pub fn probe_orthogonal(p: &ProbeState) -> Vec<C64> {
    let (s, c) = (p.theta / 2.0).sin_cos();
    vec![C64::from_polar(s, -p.phi / 2.0), -C64::from_polar(c, p.phi / 2.0)]
}

/// Single-qubit basis and superposition labels used by product-state presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QubitLabel {
    Up,
    Down,
    /// (|↑⟩ + |↓⟩)/√2
    Right,
    /// (|↑⟩ − |↓⟩)/√2
    Left,
}

impl QubitLabel {
    pub fn vector(self) -> Vec<C64> {
        let h = FRAC_1_SQRT_2;
        match self {
            QubitLabel::Up => up(),
            QubitLabel::Down => down(),
            QubitLabel::Right => vec![C64::new(h, 0.0), C64::new(h, 0.0)],
            QubitLabel::Left => vec![C64::new(h, 0.0), C64::new(-h, 0.0)],
        }
    }
}

impl FromStr for QubitLabel {
    type Err = QubitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "up" | "u" => Ok(QubitLabel::Up),
            "down" | "d" => Ok(QubitLabel::Down),
            "right" | "r" | "plus" => Ok(QubitLabel::Right),
            "left" | "l" | "minus" => Ok(QubitLabel::Left),
            other => Err(QubitError::UnknownLabel(other.to_string())),
        }
    }
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QubitLabel::Up => "up",
            QubitLabel::Down => "down",
            QubitLabel::Right => "right",
            QubitLabel::Left => "left",
        };
        f.write_str(s)
    }
}

pub fn up() -> Vec<C64> {
    vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
}

pub fn down() -> Vec<C64> {
    vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
}

fn bell(a: [f64; 4]) -> Vec<C64> {
    a.iter().map(|&x| C64::new(x * FRAC_1_SQRT_2, 0.0)).collect()
}

/// `(|↑↓⟩ + |↓↑⟩)/√2`
pub fn psi_plus() -> Vec<C64> {
    bell([0.0, 1.0, 1.0, 0.0])
}

/// `(|↑↓⟩ − |↓↑⟩)/√2`
pub fn psi_minus() -> Vec<C64> {
    bell([0.0, 1.0, -1.0, 0.0])
}

/// `(|↑↑⟩ + |↓↓⟩)/√2`
pub fn phi_plus() -> Vec<C64> {
    bell([1.0, 0.0, 0.0, 1.0])
}

/// `(|↑↑⟩ − |↓↓⟩)/√2`
pub fn phi_minus() -> Vec<C64> {
    bell([1.0, 0.0, 0.0, -1.0])
}

pub fn product_state(labels: &[QubitLabel]) -> Vec<C64> {
    labels
        .iter()
        .fold(vec![C64::new(1.0, 0.0)], |acc, l| kron(&acc, &l.vector()))
}

/// Named library of the states above.
pub fn standard_states() -> Vec<(&'static str, Vec<C64>)> {
    vec![
        ("up", up()),
        ("down", down()),
        ("right", QubitLabel::Right.vector()),
        ("left", QubitLabel::Left.vector()),
        ("psi_plus", psi_plus()),
        ("psi_minus", psi_minus()),
        ("phi_plus", phi_plus()),
        ("phi_minus", phi_minus()),
    ]
}
