use super::ProtocolError;
use crate::linalg::ComplexMatrix;
use crate::qubits::{
    build_hamiltonian, product_state, thermal_state, DensityMatrix, HamiltonianSpec, ProbeState, QubitLabel,
};
use crate::spectral::DEFAULT_SPECTRAL_TOL;

/// Initial state of the whole network, probe included.
#[derive(Clone, Debug)]
pub enum InitialState {
    /// `e^{−βH} / Z`
    Thermal {
        beta: f64,
    },
    /// One label per qubit, probe first.
    Product(Vec<QubitLabel>),
    /// Probe in a pure state, everything else maximally mixed.
    MixedRest {
        probe: QubitLabel,
    },
    Custom(DensityMatrix),
}

impl InitialState {
    pub fn resolve(&self, spec: &HamiltonianSpec) -> Result<DensityMatrix, ProtocolError> {
        let n = spec.num_qubits();
        let rho = match self {
            InitialState::Thermal { beta } => thermal_state(&build_hamiltonian(spec)?, *beta)?,
            InitialState::Product(labels) => {
                if labels.len() != n {
                    return Err(ProtocolError::InvalidConfig(format!(
                        "product state has {} labels for {n} qubits",
                        labels.len()
                    )));
                }
                DensityMatrix::pure(&product_state(labels))?
            }
            InitialState::MixedRest { probe } => {
                let x = DensityMatrix::pure(&probe.vector())?;
                x.kron(&DensityMatrix::maximally_mixed(spec.rest_dim()))
            }
            InitialState::Custom(rho) => rho.clone(),
        };
        if rho.dim() != spec.dim() {
            return Err(ProtocolError::InvalidConfig(format!(
                "initial state has dimension {}, Hamiltonian has {}",
                rho.dim(),
                spec.dim()
            )));
        }
        Ok(rho)
    }
}

/// One purification experiment: network, measured probe direction,
/// measurement interval and number of repetitions.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub hamiltonian: HamiltonianSpec,
    pub probe: ProbeState,
    pub tau: f64,
    pub n_steps: usize,
    pub initial_state: InitialState,
    /// Tolerance handed to the spectral analysis.
    pub tolerance: f64,
}

impl RunConfig {
    pub fn new(
        hamiltonian: HamiltonianSpec,
        probe: ProbeState,
        tau: f64,
        n_steps: usize,
        initial_state: InitialState,
    ) -> Self {
        Self {
            hamiltonian,
            probe,
            tau,
            n_steps,
            initial_state,
            tolerance: DEFAULT_SPECTRAL_TOL,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn validate(&self) -> Result<(), ProtocolError> {
        self.hamiltonian.validate()?;
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(ProtocolError::InvalidConfig(format!(
                "tau must be positive, got {}",
                self.tau
            )));
        }
        if self.n_steps == 0 {
            return Err(ProtocolError::InvalidConfig("n_steps must be at least 1".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(ProtocolError::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    /// Validated total initial state.
    pub fn initial_density(&self) -> Result<DensityMatrix, ProtocolError> {
        self.validate()?;
        self.initial_state.resolve(&self.hamiltonian)
    }

    pub(crate) fn initial_matrix(&self) -> Result<ComplexMatrix, ProtocolError> {
        Ok(self.initial_density()?.into_matrix())
    }
}
