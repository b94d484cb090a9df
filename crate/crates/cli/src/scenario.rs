//! Scenario files: a TOML schema for one purification experiment.
//!
//! ```toml
//! name = "example"
//! description = "optional free text"
//! n_steps = 20
//! tau = "pi_over_2delta"   # number, expression ("0.5*pi"), preset or "optimize"
//! tolerance = 1e-8         # optional
//!
//! [model]
//! topology = "pair"        # pair | chain | star
//! frequencies = [5.0, 6.0] # probe first
//! couplings = [1.0]
//!
//! [probe]
//! theta = 0.0              # number or expression
//! phi = 0.0
//!
//! [initial]
//! kind = "mixed"           # mixed { probe } | thermal { beta } | product { labels }
//! probe = "up"
//!
//! [grid]                   # required when tau = "optimize"
//! start = 0.001
//! stop = 3.0
//! step = 0.001
//!
//! [outputs]                # optional, relative to --out
//! trace_csv = "example_trace.csv"
//! spectrum_csv = "example_spectrum.csv"
//! ```
//!
//! Presets: `pi_over_2delta` is `π/2δ` for a pair, `zeta_over_sqrt2` is
//! `ζ/√(g₁² + g₂²)` for a three-qubit chain or star. Expressions are
//! products and quotients of numbers, `pi` and `sqrt2`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use zeno_purify::protocols::{
    single_qubit_detuning, zeta_angle, InitialState, ProjectedModel, ProtocolError, RunConfig, TauGrid,
};
use zeno_purify::qubits::{HamiltonianSpec, ProbeState, QubitLabel, Topology};
use zeno_purify::spectral::DEFAULT_SPECTRAL_TOL;

pub const BUNDLED: [(&str, &str); 5] = [
    ("fig2a", include_str!("../scenarios/fig2a.toml")),
    ("fig2b", include_str!("../scenarios/fig2b.toml")),
    ("fig4", include_str!("../scenarios/fig4.toml")),
    ("fig7a", include_str!("../scenarios/fig7a.toml")),
    ("fig7b", include_str!("../scenarios/fig7b.toml")),
];

#[derive(Debug, Error, Clone, PartialEq)]
pub struct ParseError {
    pub origin: String,
    pub line: Option<usize>,
    /// Dotted key path, empty at top level.
    pub key: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.origin)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if !self.key.is_empty() {
            write!(f, ": key `{}`", self.key)?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{origin}: invalid scenario: {}", violations.join("; "))]
pub struct ValidationError {
    pub origin: String,
    pub violations: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("no scenario file or bundled scenario named {0:?}")]
    Unknown(String),
}

/// A number, or text holding an expression or preset name.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::Number(0.0)
    }
}

impl Scalar {
    fn real(&self) -> Result<f64, String> {
        match self {
            Scalar::Number(x) => Ok(*x),
            Scalar::Text(s) => parse_real(s),
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum TopologyTag {
    Pair,
    Chain,
    Star,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub topology: TopologyTag,
    pub frequencies: Vec<f64>,
    pub couplings: Vec<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProbeSection {
    pub theta: Scalar,
    #[serde(default)]
    pub phi: Scalar,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSection {
    Thermal { beta: f64 },
    Product { labels: Vec<String> },
    Mixed { probe: String },
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub start: Scalar,
    pub stop: Scalar,
    pub step: Scalar,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub trace_csv: Option<PathBuf>,
    pub spectrum_csv: Option<PathBuf>,
}

/// Scenario exactly as written in the file.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub n_steps: usize,
    pub tau: Scalar,
    pub tolerance: Option<f64>,
    pub model: ModelSection,
    pub probe: ProbeSection,
    pub initial: InitialSection,
    pub grid: Option<GridSection>,
    #[serde(default)]
    pub outputs: OutputSection,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TauSetting {
    Fixed(f64),
    Optimize(TauGrid),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outputs {
    pub trace_csv: PathBuf,
    pub spectrum_csv: PathBuf,
}

/// Validated scenario with every symbolic quantity evaluated.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub hamiltonian: HamiltonianSpec,
    pub probe: ProbeState,
    pub tau: TauSetting,
    pub n_steps: usize,
    pub initial: InitialState,
    pub tolerance: f64,
    pub outputs: Outputs,
}

impl Scenario {
    pub fn model(&self) -> Result<ProjectedModel, ProtocolError> {
        ProjectedModel::new(&self.hamiltonian, self.probe)
    }

    pub fn run_config(&self, tau: f64, tol: f64) -> RunConfig {
        RunConfig::new(
            self.hamiltonian.clone(),
            self.probe,
            tau,
            self.n_steps,
            self.initial.clone(),
        )
        .with_tolerance(tol)
    }
}

/// Products and quotients of decimal numbers, `pi` and `sqrt2`, e.g. `2*pi/3`.
pub fn parse_real(text: &str) -> Result<f64, String> {
    let src = text.trim();
    let (sign, body) = match src.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, src),
    };
    let atom = |s: &str| -> Result<f64, String> {
        match s.trim() {
            "pi" | "π" => Ok(PI),
            "sqrt2" | "√2" => Ok(SQRT_2),
            t => t.parse::<f64>().map_err(|_| format!("cannot evaluate {text:?}")),
        }
    };
    let mut value = 1.0;
    let mut op = '*';
    let mut rest = body;
    loop {
        let cut = rest.find(['*', '/']).unwrap_or(rest.len());
        let x = atom(&rest[..cut])?;
        value = if op == '*' { value * x } else { value / x };
        if cut == rest.len() {
            break;
        }
        op = rest[cut..].chars().next().expect("operator");
        rest = &rest[cut + 1..];
    }
    Ok(sign * value)
}

/// `start:stop:step`, each part an expression accepted by [`parse_real`].
pub fn parse_grid(text: &str) -> Result<TauGrid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(format!("expected start:stop:step, got {text:?}"));
    };
    TauGrid::new(parse_real(start)?, parse_real(stop)?, parse_real(step)?).map_err(|e| e.to_string())
}

pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, ScenarioError> {
    let de = toml::Deserializer::new(text);
    let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let key = e.path().to_string();
        let inner = e.into_inner();
        let line = inner
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        ParseError {
            origin: origin.to_string(),
            line,
            key: if key == "." { String::new() } else { key },
            message: inner.message().to_string(),
        }
    })?;
    validate(file).map_err(|violations| {
        ValidationError {
            origin: origin.to_string(),
            violations,
        }
        .into()
    })
}

pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_scenario(&text, &path.display().to_string())
}

/// A file path if one exists, otherwise a bundled scenario name.
pub fn find_scenario(arg: &str) -> Result<Scenario, ScenarioError> {
    let path = Path::new(arg);
    if path.is_file() {
        return load_scenario(path);
    }
    BUNDLED
        .iter()
        .find(|(name, _)| *name == arg)
        .ok_or_else(|| ScenarioError::Unknown(arg.to_string()))
        .and_then(|(name, text)| parse_scenario(text, name))
}

pub fn bundled_scenarios() -> Vec<Scenario> {
    BUNDLED
        .iter()
        .map(|(name, text)| parse_scenario(text, name).expect("bundled scenarios are valid"))
        .collect()
}

fn validate(file: ScenarioFile) -> Result<Scenario, Vec<String>> {
    let mut errs = Vec::new();
    if file.name.trim().is_empty() {
        errs.push("name must not be empty".to_string());
    }
    if file.n_steps == 0 {
        errs.push("n_steps must be at least 1".to_string());
    }

    let m = &file.model;
    let hamiltonian = match m.topology {
        TopologyTag::Pair if m.frequencies.len() == 2 && m.couplings.len() == 1 => {
            HamiltonianSpec::single_pair(m.frequencies[0], m.frequencies[1], m.couplings[0])
        }
        TopologyTag::Pair => HamiltonianSpec {
            topology: Topology::SinglePair,
            frequencies: m.frequencies.clone(),
            couplings: m.couplings.clone(),
        },
        TopologyTag::Chain => HamiltonianSpec::chain(m.frequencies.clone(), m.couplings.clone()),
        TopologyTag::Star => HamiltonianSpec::star(m.frequencies.clone(), m.couplings.clone()),
    };
    let model_ok = match hamiltonian.validate() {
        Ok(()) => true,
        Err(e) => {
            errs.push(format!("model: {e}"));
            false
        }
    };

    let mut angle = |name: &str, s: &Scalar| match s.real() {
        Ok(x) => Some(x),
        Err(e) => {
            errs.push(format!("probe.{name}: {e}"));
            None
        }
    };
    let (theta, phi) = (angle("theta", &file.probe.theta), angle("phi", &file.probe.phi));
    let probe = match (theta, phi) {
        (Some(t), Some(p)) => ProbeState::new(t, p).map_err(|e| errs.push(format!("probe: {e}"))).ok(),
        _ => None,
    };

    let tau = match &file.tau {
        Scalar::Text(s) if s == "optimize" => match &file.grid {
            None => {
                errs.push("tau = \"optimize\" needs a [grid] section".to_string());
                None
            }
            Some(g) => {
                let bounds: Result<Vec<f64>, String> = [&g.start, &g.stop, &g.step].iter().map(|s| s.real()).collect();
                match bounds.and_then(|b| TauGrid::new(b[0], b[1], b[2]).map_err(|e| e.to_string())) {
                    Ok(grid) if grid.start() > 0.0 => Some(TauSetting::Optimize(grid)),
                    Ok(_) => {
                        errs.push("grid.start must be positive".to_string());
                        None
                    }
                    Err(e) => {
                        errs.push(format!("grid: {e}"));
                        None
                    }
                }
            }
        },
        Scalar::Text(s) if s == "pi_over_2delta" => match m.topology {
            TopologyTag::Pair if model_ok => Some(TauSetting::Fixed(
                PI / (2.0 * single_qubit_detuning(m.frequencies[0], m.frequencies[1], m.couplings[0])),
            )),
            TopologyTag::Pair => None,
            _ => {
                errs.push("tau preset pi_over_2delta needs topology = \"pair\"".to_string());
                None
            }
        },
        Scalar::Text(s) if s == "zeta_over_sqrt2" => {
            if m.topology == TopologyTag::Pair || m.frequencies.len() != 3 {
                errs.push("tau preset zeta_over_sqrt2 needs a three-qubit chain or star".to_string());
                None
            } else if model_ok {
                Some(TauSetting::Fixed(
                    zeta_angle(m.couplings[0], m.couplings[1]) / hamiltonian.coupling_norm(),
                ))
            } else {
                None
            }
        }
        other => match other.real() {
            Ok(t) if t.is_finite() && t > 0.0 => Some(TauSetting::Fixed(t)),
            Ok(t) => {
                errs.push(format!("tau must be positive, got {t}"));
                None
            }
            Err(e) => {
                errs.push(format!("tau: {e}"));
                None
            }
        },
    };
    if file.grid.is_some() && !matches!(&file.tau, Scalar::Text(s) if s == "optimize") {
        errs.push("[grid] is only used with tau = \"optimize\"".to_string());
    }

    let label = |s: &str, errs: &mut Vec<String>| {
        s.parse::<QubitLabel>()
            .map_err(|e| errs.push(format!("initial: {e}")))
            .ok()
    };
    let initial = match &file.initial {
        InitialSection::Thermal { beta } if beta.is_finite() && *beta >= 0.0 => {
            Some(InitialState::Thermal { beta: *beta })
        }
        InitialSection::Thermal { beta } => {
            errs.push(format!("initial.beta must be finite and non-negative, got {beta}"));
            None
        }
        InitialSection::Mixed { probe } => label(probe, &mut errs).map(|probe| InitialState::MixedRest { probe }),
        InitialSection::Product { labels } => {
            if labels.len() != m.frequencies.len() {
                errs.push(format!(
                    "initial.labels has {} entries for {} qubits",
                    labels.len(),
                    m.frequencies.len()
                ));
            }
            let parsed: Vec<Option<QubitLabel>> = labels.iter().map(|l| label(l, &mut errs)).collect();
            parsed
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .map(InitialState::Product)
        }
    };

    let tolerance = file.tolerance.unwrap_or(DEFAULT_SPECTRAL_TOL);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        errs.push(format!("tolerance must be positive, got {tolerance}"));
    }

    let outputs = Outputs {
        trace_csv: file
            .outputs
            .trace_csv
            .clone()
            .unwrap_or_else(|| format!("{}_trace.csv", file.name).into()),
        spectrum_csv: file
            .outputs
            .spectrum_csv
            .clone()
            .unwrap_or_else(|| format!("{}_spectrum.csv", file.name).into()),
    };
    for p in [&outputs.trace_csv, &outputs.spectrum_csv] {
        if p.is_absolute() || p.components().any(|c| matches!(c, std::path::Component::ParentDir)) {
            errs.push(format!(
                "output path {} must stay inside the output directory",
                p.display()
            ));
        }
    }

    match (probe, tau, initial) {
        (Some(probe), Some(tau), Some(initial)) if errs.is_empty() => Ok(Scenario {
            name: file.name,
            description: file.description,
            hamiltonian,
            probe,
            tau,
            n_steps: file.n_steps,
            initial,
            tolerance,
            outputs,
        }),
        _ => Err(errs),
    }
}
