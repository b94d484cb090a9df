use num_complex::Complex64 as C64;

use super::{ProjectedModel, ProtocolError, RunConfig};
use crate::linalg::ComplexMatrix;
use crate::qubits::{probe_vector, DensityMatrix};
use crate::spectral::{project_state, SpectralReport};

/// Smallest first-confirmation probability the simulation conditions on.
pub const MIN_PROJECTION_PROBABILITY: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceWarning {
    /// Several eigenvalues share the largest modulus; fidelity is measured
    /// against the first listed one and need not converge.
    NoUniqueTarget,
}

/// Conditional dynamics after `N = 0, 1, …, steps` successful confirmations.
#[derive(Clone, Debug)]
pub struct PurificationTrace {
    pub steps: usize,
    /// Normalized conditional states of the unmeasured qubits.
    pub rho_a: Vec<DensityMatrix>,
    /// `⟨u₀|ρ_A(N)|u₀⟩`
    pub fidelity: Vec<f64>,
    /// Probability that the first `N + 1` confirmations all succeed.
    pub probability: Vec<f64>,
    /// Dominant right eigenvector `|u₀⟩`.
    pub target: Vec<C64>,
    pub spectrum: SpectralReport,
    pub warning: Option<TraceWarning>,
}

impl PurificationTrace {
    /// Turns the warning marker into an error for callers that need a
    /// well-defined target.
    pub fn require_unique_target(self) -> Result<Self, ProtocolError> {
        match self.warning {
            Some(TraceWarning::NoUniqueTarget) => Err(ProtocolError::NoUniqueTarget),
            None => Ok(self),
        }
    }

    pub fn final_fidelity(&self) -> f64 {
        *self.fidelity.last().expect("trace has at least one entry")
    }

    pub fn final_probability(&self) -> f64 {
        *self.probability.last().expect("trace has at least one entry")
    }
}

fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale_real(0.5)
}

/// Simulates `cfg.n_steps` measurement intervals on the post-selected branch.
pub fn run_purification(cfg: &RunConfig) -> Result<PurificationTrace, ProtocolError> {
    let rho_tot = cfg.initial_matrix()?;
    let model = ProjectedModel::new(&cfg.hamiltonian, cfg.probe)?;
    let v = model.projected(cfg.tau)?;
    let spectrum = crate::spectral::spectral_report(&v, cfg.tolerance)?;
    let v_dag = v.adjoint();

    let reduced = project_state(&rho_tot, &probe_vector(&cfg.probe))?;
    let p0 = reduced.trace().re;
    if p0.is_nan() || p0 <= MIN_PROJECTION_PROBABILITY {
        return Err(ProtocolError::ZeroProjectionProbability(p0));
    }

    let target = spectrum.target().to_vec();
    let capacity = cfg.n_steps + 1;
    let mut rho_a = Vec::with_capacity(capacity);
    let mut fidelity = Vec::with_capacity(capacity);
    let mut probability = Vec::with_capacity(capacity);

    let mut rho = hermitian_part(&reduced.scale_real(1.0 / p0));
    let mut p = p0;
    for step in 0..=cfg.n_steps {
        let state = DensityMatrix::new(rho.clone())?;
        fidelity.push(state.expectation(&target));
        probability.push(p);
        rho_a.push(state);
        if step == cfg.n_steps {
            break;
        }
        let evolved = &(&v * &rho) * &v_dag;
        let survival = evolved.trace().re;
        if survival.is_nan() || survival <= 0.0 {
            return Err(ProtocolError::ConditionalCollapse { step: step + 1 });
        }
        p *= survival;
        rho = hermitian_part(&evolved.scale_real(1.0 / survival));
    }

    let warning = (!spectrum.flags.unique_max).then_some(TraceWarning::NoUniqueTarget);
    Ok(PurificationTrace {
        steps: cfg.n_steps,
        rho_a,
        fidelity,
        probability,
        target,
        spectrum,
        warning,
    })
}

/// Limit of the success probability as the number of confirmations grows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AsymptoticProbability {
    /// `|λ₀| = 1`: the limit is the weight of `|φ v₀⟩` in the initial state.
    Optimal(f64),
    /// `|λ₀| < 1`: the probability decays like `|λ₀|^{2N}`.
    Vanishing { modulus: f64 },
}

impl AsymptoticProbability {
    pub fn value(&self) -> f64 {
        match self {
            AsymptoticProbability::Optimal(p) => *p,
            AsymptoticProbability::Vanishing { .. } => 0.0,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, AsymptoticProbability::Optimal(_))
    }
}

/// `⟨φ v₀|ρ_tot|φ v₀⟩` built from the dominant left eigenvector.
pub fn asymptotic_probability(cfg: &RunConfig) -> Result<AsymptoticProbability, ProtocolError> {
    let rho_tot = cfg.initial_matrix()?;
    let model = ProjectedModel::new(&cfg.hamiltonian, cfg.probe)?;
    let report = model.report(cfg.tau, cfg.tolerance)?;
    if !report.flags.purifies() {
        return Err(ProtocolError::NoUniqueTarget);
    }
    if !report.flags.optimal_modulus {
        return Ok(AsymptoticProbability::Vanishing {
            modulus: report.moduli[0],
        });
    }
    let reduced = project_state(&rho_tot, &probe_vector(&cfg.probe))?;
    // the stored row is ⟨v₀|, so the ket has conjugated components
    let bra = report.dominant_left();
    let ket: Vec<C64> = bra.iter().map(|z| z.conj()).collect();
    let image = reduced.mul_vec(&ket);
    let value: C64 = bra.iter().zip(&image).map(|(b, k)| b * k).sum();
    Ok(AsymptoticProbability::Optimal(value.re))
}
