//! Command-line front end: scenario files in, CSV tables out.

pub mod commands;
pub mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use zeno_purify::protocols::{ProtocolError, TraceWarning};
use zeno_purify::Execution;

use commands::Table;
use scenario::{ParseError, Scenario, ScenarioError, ValidationError};

#[derive(Debug, Parser)]
#[command(
    name = "zeno",
    version,
    about = "Purify qubits by repeatedly measuring a coupled probe"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the projected operator, or moduli over a τ sweep.
    Spectrum {
        #[command(flatten)]
        run: RunArgs,
        /// τ sweep as start:stop:step; bounds may use `pi`
        #[arg(long, value_parser = scenario::parse_grid)]
        sweep: Option<zeno_purify::protocols::TauGrid>,
    },
    /// Fidelity and success probability after each confirmation.
    Purify {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Grid search for the fastest purifying τ.
    Optimize {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Bundled scenarios.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioAction {
    List,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Scenario file, or the name of a bundled scenario
    #[arg(long)]
    pub scenario: String,
    /// Write CSV files here instead of printing to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Spectral tolerance, overriding the scenario
    #[arg(long)]
    pub tol: Option<f64>,
    /// Run grid searches on a single thread
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 for bad input, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Protocol(
                ProtocolError::InvalidConfig(_) | ProtocolError::InvalidGrid(_) | ProtocolError::Qubit(_),
            ) => 1,
            CliError::Protocol(_) => 2,
            _ => 1,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Scenario(e.into())
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        CliError::Scenario(e.into())
    }
}

struct Context {
    scenario: Scenario,
    tol: f64,
    exec: Execution,
    out: Option<PathBuf>,
}

impl Context {
    fn new(args: &RunArgs) -> Result<Self, CliError> {
        let scenario = scenario::find_scenario(&args.scenario)?;
        let tol = args.tol.unwrap_or(scenario.tolerance);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
        let exec = if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        };
        Ok(Self {
            scenario,
            tol,
            exec,
            out: args.out.clone(),
        })
    }

    fn emit(&self, table: &Table, file: &Path, stdout: &mut dyn Write) -> Result<(), CliError> {
        let csv = table.to_csv();
        match &self.out {
            None => stdout.write_all(csv.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
            Some(dir) => {
                let path = dir.join(file);
                let io = |source| CliError::Io {
                    path: path.clone(),
                    source,
                };
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent).map_err(io)?;
                }
                std::fs::write(&path, csv).map_err(io)?;
                writeln!(stdout, "{}", path.display()).map_err(io)
            }
        }
    }
}

fn sweep_file(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("spectrum");
    path.with_file_name(format!("{stem}_sweep.csv"))
}

pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum { run, sweep } => {
            let ctx = Context::new(&run)?;
            let outputs = &ctx.scenario.outputs;
            match sweep {
                Some(grid) => {
                    let t = commands::cmd_sweep(&ctx.scenario, &grid, ctx.tol, ctx.exec)?;
                    ctx.emit(&t, &sweep_file(&outputs.spectrum_csv), stdout)
                }
                None => {
                    let t = commands::cmd_spectrum(&ctx.scenario, ctx.tol, ctx.exec)?;
                    ctx.emit(&t, &outputs.spectrum_csv, stdout)
                }
            }
        }
        Command::Purify { run } => {
            let ctx = Context::new(&run)?;
            let (t, warning) = commands::cmd_purify(&ctx.scenario, ctx.tol, ctx.exec)?;
            if let Some(TraceWarning::NoUniqueTarget) = warning {
                let _ = writeln!(stderr, "warning: largest-modulus eigenvalue is not unique; fidelity is relative to one of several candidates");
            }
            ctx.emit(&t, &ctx.scenario.outputs.trace_csv, stdout)
        }
        Command::Optimize { run } => {
            let ctx = Context::new(&run)?;
            let t = commands::cmd_optimize(&ctx.scenario, ctx.tol, ctx.exec)?.ok_or_else(|| {
                CliError::Usage(format!(
                    "scenario {} fixes tau; optimize needs tau = \"optimize\" and a [grid]",
                    ctx.scenario.name
                ))
            })?;
            ctx.emit(&t, &ctx.scenario.outputs.spectrum_csv, stdout)
        }
        Command::Scenario {
            action: ScenarioAction::List,
        } => {
            for s in scenario::bundled_scenarios() {
                writeln!(stdout, "{}\t{}", s.name, s.description).map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            }
            Ok(())
        }
    }
}

/// Parse `args` (program name first), run, and return the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 1;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
