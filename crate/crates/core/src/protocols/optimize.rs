use super::{ProjectedModel, ProtocolError};
use crate::exec::{map_collect, Execution};
use crate::spectral::SpectralReport;

/// Evenly spaced measurement intervals `start, start + step, …` up to `stop`
/// inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauGrid {
    start: f64,
    stop: f64,
    step: f64,
}

impl TauGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, ProtocolError> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(ProtocolError::InvalidGrid("bounds and step must be finite".into()));
        }
        if step <= 0.0 {
            return Err(ProtocolError::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if start < 0.0 || stop < start {
            return Err(ProtocolError::InvalidGrid(format!(
                "need 0 ≤ start ≤ stop, got {start}..{stop}"
            )));
        }
        Ok(Self { start, stop, step })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        // a relative slack keeps `stop` when it is a multiple of `step` up to rounding
        ((self.stop - self.start) / self.step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.start + k as f64 * self.step).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub tau: f64,
    pub report: SpectralReport,
}

/// Spectral report at every grid point, in grid order.
pub fn sweep_spectrum(
    model: &ProjectedModel,
    grid: &TauGrid,
    tol: f64,
    exec: Execution,
) -> Result<Vec<SweepPoint>, ProtocolError> {
    map_collect(exec, &grid.points(), |&tau| {
        model.report(tau, tol).map(|report| SweepPoint { tau, report })
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug)]
pub struct TauOptimum {
    pub tau: f64,
    pub gap_ratio: f64,
    pub report: SpectralReport,
}

/// Grid search for the fastest optimal purification: smallest `gap_ratio`
/// among points whose dominant eigenvalue is unique with unit modulus, ties
/// going to the smallest `τ`. Points where the spectral analysis fails count
/// as infeasible.
pub fn optimize_tau(
    model: &ProjectedModel,
    grid: &TauGrid,
    tol: f64,
    exec: Execution,
) -> Result<TauOptimum, ProtocolError> {
    let points = grid.points();
    if points.iter().any(|&t| t <= 0.0) {
        return Err(ProtocolError::InvalidGrid(
            "optimization needs tau > 0 at every point".into(),
        ));
    }
    let candidates = map_collect(exec, &points, |&tau| {
        model
            .report(tau, tol)
            .ok()
            .filter(|r| r.flags.unique_max && r.flags.optimal_modulus)
            .map(|report| TauOptimum {
                tau,
                gap_ratio: report.gap_ratio,
                report,
            })
    });
    candidates
        .into_iter()
        .flatten()
        .min_by(|a, b| a.gap_ratio.total_cmp(&b.gap_ratio).then(a.tau.total_cmp(&b.tau)))
        .ok_or(ProtocolError::NoFeasiblePoint { points: points.len() })
}
