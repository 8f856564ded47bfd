//! The `msd` command-line tool.
//!
//! Every command reads a stratum from a JSON spec file (`--spec`), runs one
//! computation and writes a report to standard output (or `--out`), either
//! as aligned text or, with `--json`, as machine-readable JSON with rationals
//! rendered as `"p/q"`. Diagnostics go to standard error.
//!
//! Exit codes: `0` on success, `1` for diagnostics (invalid input, missing
//! fixtures), `2` for internal-consistency failures, including failed
//! cross-checks.

mod report;

use clap::{Args, Parser, Subcommand};
use evaluate::{BackendRegistry, EvalError, FixtureRegistry, Integrand, Integrator};
use invariants::{c1_log_cotangent, chern_polynomial, cross_check, euler_characteristic, ChiTable};
use levelgraphs::GraphError;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use strata::StratumSpec;
use tautring::{LevelIntegrator, TautError};
use thiserror::Error;

pub use report::{DivisorRow, GraphReport, InfoReport, ProfileRow, XiTopReport};

/// Boundary graphs, integrals and Euler characteristics of strata of
/// differentials.
#[derive(Debug, Parser)]
#[command(name = "msd", version, about)]
pub struct Cli {
    /// The command.
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by all commands.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Stratum spec file (JSON).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Extra fixture files, appended to the shipped table.
    #[arg(long)]
    pub fixtures: Vec<PathBuf>,
    /// Restrict to graphs with this many levels below zero.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The commands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension data and boundary counts.
    Info(Common),
    /// Boundary graphs with their prong data and level strata.
    Graphs(Common),
    /// Two-level graphs (boundary divisors).
    Divisors(Common),
    /// Profiles of graphs with at least two levels below zero.
    Profiles(Common),
    /// Orbifold Euler characteristic with its graph-by-graph assembly.
    Chi(Common),
    /// Top power of the tautological class.
    XiTop(Common),
    /// First Chern class of the logarithmic cotangent bundle.
    C1(Common),
    /// Chern classes, checked against the Euler characteristic.
    Chern(Common),
    /// Consistency checks on a spec, or the gluing identities between
    /// published Euler characteristics with `--tables`.
    Check {
        /// Shared flags.
        #[command(flatten)]
        common: Common,
        /// Check the published tables instead of a spec.
        #[arg(long)]
        tables: bool,
        /// Replace published values by the entries of this file
        /// (`{"values": {"signature": "p/q"}, "provenance": {...}}`).
        #[arg(long)]
        chi_table: Option<PathBuf>,
    },
}

/// Failures of a command.
#[derive(Debug, Error)]
pub enum CliError {
    /// A file could not be read or written.
    #[error("{path}: {message}")]
    Io {
        /// The file.
        path: String,
        /// What went wrong.
        message: String,
    },
    /// Invalid input.
    #[error("{0}")]
    Input(String),
    /// An evaluation failed.
    #[error(transparent)]
    Eval(#[from] EvalError),
    /// A check did not hold; the report has been written.
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    /// The exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Eval(EvalError::Taut(TautError::Consistency(_)))
            | CliError::Eval(EvalError::Taut(TautError::Graph(GraphError::Consistency(_))))
            | CliError::CheckFailed(_) => 2,
            _ => 1,
        }
    }
}

impl From<TautError> for CliError {
    fn from(e: TautError) -> Self {
        CliError::Eval(EvalError::Taut(e))
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load_spec(common: &Common) -> Result<StratumSpec, CliError> {
    let path = common.spec.as_ref().ok_or_else(|| CliError::Input("--spec is required".into()))?;
    let spec = StratumSpec::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    spec.validate().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if spec.dim() < 0 {
        return Err(CliError::Input(format!("{}: the stratum is empty", path.display())));
    }
    Ok(spec)
}

fn integrator(common: &Common) -> Result<Integrator, CliError> {
    let mut fixtures = FixtureRegistry::table();
    let closed = BackendRegistry::closed_forms();
    for path in &common.fixtures {
        let extra = FixtureRegistry::from_json(&read(path)?)?;
        // A fixture that a closed form would shadow must agree with it.
        for (key, value, provenance) in extra.iter() {
            if let Integrand::XiPower(d) = key.integrand {
                if i64::from(d) == key.spec.dim() {
                    if let Some((rule, known)) = closed.first_match(&key.spec) {
                        if &known != value {
                            return Err(CliError::Eval(EvalError::Taut(TautError::Consistency(format!(
                                "{}: fixture {key} = {value} ({provenance}) contradicts {rule} value {known}",
                                path.display()
                            )))));
                        }
                    }
                }
            }
        }
        fixtures.extend(&extra)?;
    }
    Ok(Integrator::new(BackendRegistry::with_fixtures(fixtures)))
}

fn emit(common: &Common, out: &mut dyn Write, text: String, json: impl serde::Serialize) -> Result<(), CliError> {
    let body = if common.json {
        serde_json::to_string_pretty(&json).map_err(|e| CliError::Input(e.to_string()))? + "\n"
    } else {
        text + "\n"
    };
    match &common.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() }),
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io { path: "<stdout>".into(), message: e.to_string() }),
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Info(c) => {
            let spec = load_spec(c)?;
            let integ = integrator(c)?;
            let info = InfoReport::build(&spec, &integ)?;
            emit(c, out, info.to_text(), &info)
        }
        Command::Graphs(c) => {
            let spec = load_spec(c)?;
            let integ = integrator(c)?;
            let graphs = GraphReport::collect(&spec, &integ, c.levels)?;
            emit(c, out, GraphReport::to_text(&graphs, c.levels), &graphs)
        }
        Command::Divisors(c) => {
            let spec = load_spec(c)?;
            let integ = integrator(c)?;
            let rows = DivisorRow::collect(&spec, &integ)?;
            emit(c, out, DivisorRow::to_text(&rows), &rows)
        }
        Command::Profiles(c) => {
            let spec = load_spec(c)?;
            let integ = integrator(c)?;
            let rows = ProfileRow::collect(&spec, &integ, c.levels)?;
            emit(c, out, ProfileRow::to_text(&rows), &rows)
        }
        Command::Chi(c) => {
            let spec = load_spec(c)?;
            let report = euler_characteristic(&spec, &integrator(c)?)?;
            emit(c, out, report.to_table(), &report)
        }
        Command::XiTop(c) => {
            let spec = load_spec(c)?;
            let (value, rule) = integrator(c)?.xi_top_with_rule(&spec)?;
            let report = XiTopReport { spec, value, rule: rule.to_string() };
            emit(c, out, report.value.to_string(), &report)
        }
        Command::C1(c) => {
            let spec = load_spec(c)?;
            let integ = integrator(c)?;
            let class = c1_log_cotangent(&spec, &integ)?;
            let ring = integ.rings().ring(&spec);
            let lg1 = ring.lg1()?;
            let describe = |i: usize| lg1.graphs[i].graph.describe();
            let rows = class.dump(describe);
            let text: Vec<String> = rows
                .iter()
                .map(|r| {
                    let what = if r.xi > 0 { "xi".to_string() } else { r.divisors.iter().map(|(d, _)| format!("[{d}]")).collect() };
                    format!("{}  {}", r.coeff, what)
                })
                .collect();
            emit(c, out, text.join("\n"), &rows)
        }
        Command::Chern(c) => {
            let spec = load_spec(c)?;
            let report = chern_polynomial(&spec, &integrator(c)?)?;
            emit(c, out, report.to_table(), &report)?;
            if report.consistent {
                Ok(())
            } else {
                Err(CliError::CheckFailed("top Chern class differs from the Euler characteristic".into()))
            }
        }
        Command::Check { common, tables, chi_table } => {
            if *tables {
                let mut table = ChiTable::published();
                if let Some(path) = chi_table {
                    let extra: ChiTable =
                        serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    for (sig, v) in extra.values {
                        let prov = extra.provenance.get(&sig).cloned().unwrap_or_else(|| path.display().to_string());
                        table.insert(&sig, v, &prov);
                    }
                }
                let ledger = cross_check(&table);
                emit(common, out, ledger.to_table(), &ledger)?;
                if ledger.passed() {
                    Ok(())
                } else {
                    Err(CliError::CheckFailed("cross-check failed".into()))
                }
            } else {
                let spec = load_spec(common)?;
                let report = chern_polynomial(&spec, &integrator(common)?)?;
                emit(common, out, report.to_table(), &report)?;
                if report.consistent {
                    Ok(())
                } else {
                    Err(CliError::CheckFailed("top Chern class differs from the Euler characteristic".into()))
                }
            }
        }
    }
}
