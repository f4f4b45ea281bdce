//! The `obslab` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use obslab_core::bfc::{backward_bound_check, bfc_scan, BfcOutcome};
use obslab_core::certifier::{certify_finite, certify_infinite, CertificateScope, ConstantConvention};
use obslab_core::demos::Demo;
use obslab_core::diagnostics::diagnose;
use obslab_core::gramian::{gram, obs_window, window_scan, Horizon};
use obslab_core::squarefn::{squarefn_report, SquareFnVerdict};
use obslab_core::{grid, validate_system, Error, ValidatedSystem, DEFAULT_QUAD_TOL};

use crate::error::CliError;
use crate::report::{num, opt_num, Table};
use crate::scenario::{build_demo, load_scenario, Scenario};

/// Truncation used by `--demo` when `--modes` is absent.
pub const DEFAULT_MODES: usize = 16;
/// Horizon of the reference window when the infinite-time Gramian does not exist.
pub const REFERENCE_HORIZON: f64 = 100.0;
/// Absolute slack when comparing a certified constant with the exact one.
pub const VALIDITY_SLACK: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "obslab", version, about = "Exact-observability analysis of diagonal semigroup systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Scenario file (JSON)
    #[arg(long, value_name = "PATH")]
    pub scenario: Option<PathBuf>,
    /// Built-in family
    #[arg(long, value_name = "NAME", value_parser = ["wave", "schrodinger1d", "heat1d"])]
    pub demo: Option<String>,
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub source: Source,
    /// Truncation of the built-in family (wave has 2N modes) [default: 16]
    #[arg(long, value_name = "N")]
    pub modes: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Relative tolerance of the angular quadrature
    #[arg(long, value_name = "TOL", env = "OBSLAB_QUAD_TOL", default_value_t = DEFAULT_QUAD_TOL)]
    pub quad_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the system as a scenario file
    Demo(Common),
    /// Entries of the observability Gramian G(τ)
    Gram {
        #[command(flatten)]
        common: Common,
        /// Horizon: a positive time or `inf`
        #[arg(long, value_name = "T")]
        tau: String,
    },
    /// m(τ)² and M(τ)² over a time grid
    WindowScan {
        #[command(flatten)]
        common: Common,
        /// `A:B:STEP` or a comma-separated list
        #[arg(long, value_name = "GRID")]
        taus: String,
    },
    /// Search for M(η) < m(τ) with η < τ
    Bfc {
        #[command(flatten)]
        common: Common,
        /// η grid, `A:B:STEP` or a list [default: 50 log-spaced points in 1e-3..1e2]
        #[arg(long, value_name = "GRID")]
        etas: Option<String>,
        /// τ grid, same forms and default as --etas
        #[arg(long, value_name = "GRID")]
        taus: Option<String>,
    },
    /// Weighted square-function constants per mode
    Squarefn {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// One row per mode instead of the summary
        #[arg(long)]
        per_mode: bool,
    },
    /// Observability certificate, infinite time or (with --omega) finite time
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Shift for the finite-time certificate
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Spectral summary and consistency rules
    Diagnose {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "GRID")]
        etas: Option<String>,
        #[arg(long, value_name = "GRID")]
        taus: Option<String>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Demo(common) => common,
            Command::Gram { common, .. }
            | Command::WindowScan { common, .. }
            | Command::Bfc { common, .. }
            | Command::Squarefn { common, .. }
            | Command::Certify { common, .. }
            | Command::Diagnose { common, .. } => common,
        }
    }
}

enum Output {
    Csv(Table),
    Text(String),
}

/// Parses a grid given as `A:B:STEP` (inclusive) or `t1,t2,...`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Input(format!("grid `{text}`: expected A:B:STEP or a comma-separated list"));
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        return Ok(grid::linear_grid(number(parts[0])?, number(parts[1])?, number(parts[2])?)?);
    }
    text.split(',').map(number).collect()
}

fn parse_horizon(text: &str) -> Result<Horizon, CliError> {
    match text.trim() {
        "inf" | "infinity" | "Infinity" => Ok(Horizon::Infinite),
        s => s
            .parse::<f64>()
            .map(Horizon::Finite)
            .map_err(|_| CliError::Input(format!("--tau `{text}`: expected a time or `inf`"))),
    }
}

fn scenario_of(common: &Common) -> Result<Scenario, CliError> {
    match (&common.source.scenario, &common.source.demo) {
        (Some(path), None) => {
            if common.modes.is_some() {
                return Err(CliError::Input("--modes applies only to --demo".into()));
            }
            load_scenario(path)
        }
        (None, Some(name)) => {
            let demo: Demo = name.parse()?;
            build_demo(demo, common.modes.unwrap_or(DEFAULT_MODES))
        }
        _ => Err(CliError::Input("give exactly one of --scenario or --demo".into())),
    }
}

fn load(common: &Common) -> Result<ValidatedSystem, CliError> {
    Ok(validate_system(&scenario_of(common)?.to_system()?)?)
}

fn grid_or_default(text: &Option<String>) -> Result<Vec<f64>, CliError> {
    text.as_deref().map_or_else(|| Ok(grid::default_bfc_grid()), parse_grid)
}

fn gram_table(sys: &ValidatedSystem, horizon: Horizon) -> Result<Table, CliError> {
    let g = gram(sys, horizon)?.matrix;
    let mut t = Table::new(&["row", "col", "re", "im"]);
    for i in 0..g.dim() {
        for (j, z) in g.row(i).iter().enumerate() {
            t.push(vec![i.to_string(), j.to_string(), num(z.re), num(z.im)]);
        }
    }
    Ok(t)
}

fn window_table(sys: &ValidatedSystem, taus: &[f64]) -> Result<Table, CliError> {
    let mut t = Table::new(&["tau", "mSq", "MSq"]);
    for w in window_scan(sys, taus)? {
        let tau = w.horizon.finite().unwrap_or(f64::INFINITY);
        t.push(vec![num(tau), num(w.m_sq), num(w.big_m_sq)]);
    }
    Ok(t)
}

fn bfc_table(sys: &ValidatedSystem, etas: &[f64], taus: &[f64]) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "verdict",
        "eta",
        "tau",
        "MSq_eta",
        "mSq_tau",
        "margin",
        "backward_bound",
        "eps_sq",
        "backward_ok",
        "conditioning_product",
    ]);
    match bfc_scan(sys, etas, taus)? {
        BfcOutcome::Found(c) => {
            let check = backward_bound_check(sys, &c)?;
            t.push(vec![
                "FOUND".into(),
                num(c.eta),
                num(c.tau),
                num(c.big_m_sq_eta),
                num(c.m_sq_tau),
                num(c.margin),
                num(c.backward_bound),
                num(check.eps_sq),
                check.ok.to_string(),
                num(c.conditioning_product),
            ]);
        }
        BfcOutcome::NotFound { best_margin } => {
            let mut row = vec![String::new(); 10];
            row[0] = "NOT_FOUND".into();
            row[5] = num(best_margin);
            t.push(row);
        }
    }
    Ok(t)
}

fn squarefn_table(sys: &ValidatedSystem, beta: f64, per_mode: bool, tol: f64) -> Result<Table, CliError> {
    let r = squarefn_report(sys, beta, tol)?;
    if per_mode {
        let mut t = Table::new(&["index", "re", "im", "j"]);
        for (i, (l, j)) in sys.eigenvalues().iter().zip(&r.per_mode_j).enumerate() {
            t.push(vec![i.to_string(), num(l.re), num(l.im), num(*j)]);
        }
        return Ok(t);
    }
    let verdict = match r.verdict {
        SquareFnVerdict::Holds { .. } => "HOLDS",
        SquareFnVerdict::FailsOnFamily { .. } => "FAILS_ON_FAMILY",
        SquareFnVerdict::Degenerate => "DEGENERATE",
    };
    let mut t = Table::new(&["beta", "modes", "inf_j", "KSq", "fitted_exponent", "verdict"]);
    t.push(vec![
        num(beta),
        sys.modes().to_string(),
        num(r.inf_j),
        opt_num(r.k_sq),
        opt_num(r.fitted_exponent),
        verdict.into(),
    ]);
    Ok(t)
}

/// Exact constant the certificate is compared against: `m(∞)²` when the
/// infinite-time Gramian exists, otherwise `m(100)² ≤ m(∞)²`.
fn infinite_reference(sys: &ValidatedSystem) -> Result<(String, f64), CliError> {
    match obs_window(sys, Horizon::Infinite) {
        Ok(w) => Ok(("mSq(inf)".into(), w.m_sq)),
        Err(Error::NotInfiniteTimeAdmissible) => {
            let w = obs_window(sys, Horizon::Finite(REFERENCE_HORIZON))?;
            Ok((format!("mSq({REFERENCE_HORIZON})"), w.m_sq))
        }
        Err(e) => Err(e.into()),
    }
}

fn certify_table(sys: &ValidatedSystem, beta: f64, omega: Option<f64>, tol: f64) -> Result<Table, CliError> {
    let cert = match omega {
        Some(omega) => certify_finite(sys, beta, omega, tol)?,
        None => certify_infinite(sys, beta, tol)?,
    };
    let mut t = Table::new(&[
        "scope",
        "beta",
        "delta",
        "KSq",
        "mCertSq",
        "omega",
        "tau_star",
        "mFiniteSq",
        "bigM",
        "M_double_prime",
        "reference",
        "reference_mSq",
        "verdict",
        "constant_convention",
    ]);
    let convention = match cert.constant_convention {
        ConstantConvention::ProofChain => "proof_chain",
    };
    let (scope, finite, (reference, exact), certified) = match cert.scope {
        CertificateScope::InfiniteTime => ("infinite", None, infinite_reference(sys)?, cert.m_cert_sq),
        CertificateScope::FiniteTime { omega, tau_star, m_finite_sq, big_m, m_double_prime } => {
            let w = obs_window(sys, Horizon::Finite(tau_star))?;
            (
                "finite",
                Some([omega, tau_star, m_finite_sq, big_m, m_double_prime]),
                ("mSq(tau_star)".to_string(), w.m_sq),
                m_finite_sq,
            )
        }
    };
    let verdict = if certified <= exact + VALIDITY_SLACK { "VALID" } else { "INVALID" };
    let mut row = vec![scope.to_string(), num(beta), num(cert.delta), num(cert.k_sq), num(cert.m_cert_sq)];
    match finite {
        Some(values) => row.extend(values.map(num)),
        None => row.extend(std::iter::repeat_n(String::new(), 5)),
    }
    row.extend([reference, num(exact), verdict.to_string(), convention.to_string()]);
    t.push(row);
    Ok(t)
}

fn diagnose_table(sys: &ValidatedSystem, etas: &[f64], taus: &[f64]) -> Result<Table, CliError> {
    let outcome = bfc_scan(sys, etas, taus)?;
    let d = diagnose(sys, &outcome);
    let mut t =
        Table::new(&["modes", "sup_re", "inf_re", "strip_width", "group_extendable", "bfc", "flags"]);
    let flags: Vec<String> = d.flags.iter().map(ToString::to_string).collect();
    t.push(vec![
        sys.modes().to_string(),
        num(d.sup_re),
        num(d.inf_re),
        num(d.strip_width),
        d.group_extendable.to_string(),
        if outcome.certificate().is_some() { "FOUND" } else { "NOT_FOUND" }.into(),
        flags.join(";"),
    ]);
    Ok(t)
}

fn produce(command: &Command) -> Result<Output, CliError> {
    let common = command.common();
    if let Command::Demo(_) = command {
        return Ok(Output::Text(scenario_of(common)?.to_json()?));
    }
    let sys = load(common)?;
    let table = match command {
        Command::Demo(_) => unreachable!("handled above"),
        Command::Gram { tau, .. } => gram_table(&sys, parse_horizon(tau)?)?,
        Command::WindowScan { taus, .. } => window_table(&sys, &parse_grid(taus)?)?,
        Command::Bfc { etas, taus, .. } => bfc_table(&sys, &grid_or_default(etas)?, &grid_or_default(taus)?)?,
        Command::Squarefn { beta, per_mode, .. } => squarefn_table(&sys, *beta, *per_mode, common.quad_tol)?,
        Command::Certify { beta, omega, .. } => certify_table(&sys, *beta, *omega, common.quad_tol)?,
        Command::Diagnose { etas, taus, .. } => {
            diagnose_table(&sys, &grid_or_default(etas)?, &grid_or_default(taus)?)?
        }
    };
    Ok(Output::Csv(table))
}

fn emit(output: &Output, w: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Output::Csv(t) => t.write_csv(&mut *w)?,
        Output::Text(s) => w.write_all(s.as_bytes())?,
    }
    w.flush()?;
    Ok(())
}

/// Runs a parsed command, writing the report to `--out` or to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let output = produce(&cli.command)?;
    match &cli.command.common().out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            emit(&output, &mut BufWriter::new(file))
        }
        None => emit(&output, stdout),
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Input(e.to_string()))?;
    execute(&cli, stdout)
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match execute(&cli, &mut io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("obslab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
