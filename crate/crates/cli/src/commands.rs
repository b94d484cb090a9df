use zeno_purify::protocols::{optimize_tau, run_purification, sweep_spectrum, ProtocolError, TauGrid, TraceWarning};
use zeno_purify::spectral::SpectralReport;
use zeno_purify::Execution;

use crate::scenario::{Scenario, TauSetting};

/// Fixed six-decimal formatting; `-0.000000` prints as `0.000000`.
pub fn fmt_real(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.strip_prefix('-')
        .is_some_and(|rest| rest.bytes().all(|b| b == b'0' || b == b'.'))
    {
        s[1..].to_string()
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Option<Self> {
        let mut lines = text.lines();
        let header: Vec<String> = lines.next()?.split(',').map(str::to_string).collect();
        let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
        rows.iter()
            .all(|r| r.len() == header.len())
            .then_some(Self { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k].as_str()).collect())
    }
}

const SPECTRUM_COLUMNS: [&str; 9] = [
    "index",
    "re",
    "im",
    "modulus",
    "dominant",
    "unique_max",
    "nondegenerate_max",
    "optimal_modulus",
    "diagonalizable",
];

fn spectrum_rows(report: &SpectralReport) -> Vec<Vec<String>> {
    let f = &report.flags;
    report
        .eigenvalues
        .iter()
        .zip(&report.moduli)
        .enumerate()
        .map(|(k, (z, m))| {
            vec![
                k.to_string(),
                fmt_real(z.re),
                fmt_real(z.im),
                fmt_real(*m),
                (k == 0).to_string(),
                f.unique_max.to_string(),
                f.nondegenerate_max.to_string(),
                f.optimal_modulus.to_string(),
                f.diagonalizable.to_string(),
            ]
        })
        .collect()
}

/// `τ` of the scenario, running the grid search when it asks for one.
pub fn resolve_tau(s: &Scenario, tol: f64, exec: Execution) -> Result<f64, ProtocolError> {
    match s.tau {
        TauSetting::Fixed(t) => Ok(t),
        TauSetting::Optimize(grid) => Ok(optimize_tau(&s.model()?, &grid, tol, exec)?.tau),
    }
}

/// One row per eigenvalue of the projected operator.
pub fn cmd_spectrum(s: &Scenario, tol: f64, exec: Execution) -> Result<Table, ProtocolError> {
    let tau = resolve_tau(s, tol, exec)?;
    let report = s.model()?.report(tau, tol)?;
    let mut t = Table::new(SPECTRUM_COLUMNS);
    t.rows = spectrum_rows(&report);
    Ok(t)
}

/// Moduli against `τ`, one row per grid point.
pub fn cmd_sweep(s: &Scenario, grid: &TauGrid, tol: f64, exec: Execution) -> Result<Table, ProtocolError> {
    let points = sweep_spectrum(&s.model()?, grid, tol, exec)?;
    let dim = s.hamiltonian.rest_dim();
    let mut t = Table::new(
        ["tau".to_string(), "gap_ratio".to_string()]
            .into_iter()
            .chain((0..dim).map(|k| format!("mod_{k}"))),
    );
    t.rows = points
        .iter()
        .map(|p| {
            [fmt_real(p.tau), fmt_real(p.report.gap_ratio)]
                .into_iter()
                .chain(p.report.moduli.iter().map(|m| fmt_real(*m)))
                .collect()
        })
        .collect();
    Ok(t)
}

/// Fidelity and success probability for `N = 0…n_steps`.
pub fn cmd_purify(s: &Scenario, tol: f64, exec: Execution) -> Result<(Table, Option<TraceWarning>), ProtocolError> {
    let tau = resolve_tau(s, tol, exec)?;
    let trace = run_purification(&s.run_config(tau, tol))?;
    let mut t = Table::new(["N", "fidelity", "probability"]);
    t.rows = (0..=trace.steps)
        .map(|n| {
            vec![
                n.to_string(),
                fmt_real(trace.fidelity[n]),
                fmt_real(trace.probability[n]),
            ]
        })
        .collect();
    Ok((t, trace.warning))
}

/// Best `τ` on the scenario grid with the spectrum there. `Ok(None)` when the
/// scenario fixes `τ` instead of asking for a search.
pub fn cmd_optimize(s: &Scenario, tol: f64, exec: Execution) -> Result<Option<Table>, ProtocolError> {
    let TauSetting::Optimize(grid) = s.tau else {
        return Ok(None);
    };
    let best = optimize_tau(&s.model()?, &grid, tol, exec)?;
    let mut t = Table::new(["tau", "gap_ratio"].into_iter().chain(SPECTRUM_COLUMNS));
    let prefix = [fmt_real(best.tau), fmt_real(best.gap_ratio)];
    t.rows = spectrum_rows(&best.report)
        .into_iter()
        .map(|row| prefix.iter().cloned().chain(row).collect())
        .collect();
    Ok(Some(t))
}
