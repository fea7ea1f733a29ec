//! `hyc`: command-line driver. Parses measure/function JSON, dispatches to
//! the library's verification suites, and emits deterministic
//! machine-readable reports (JSON) and plot-ready tables (CSV).
//!
//! Exit codes: 0 when every check passes (informational commands count as
//! passing), 1 when a verification check fails, 2 on usage, domain, or
//! malformed-input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};

use hyc_core::carleson::{carleson_norm, default_carleson_tol};
use hyc_core::consts::{
    a1_bound, a2_bound, babenko_constant, conjugate_exponent, hardy_constant, m_bound,
    marcinkiewicz_optimum,
};
use hyc_core::hy::hy_lower_bound;
use hyc_core::measure::HalfPlaneMeasure;
use hyc_core::poisson_cz::{cz_decompose, RealStepFunction};
use hyc_core::suites::{run_suite, sharpness_row, SuiteKind};

#[derive(Parser)]
#[command(name = "hyc", version, about = "Carleson-measure and transform-norm verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the constant table at exponent p
    Constants {
        #[arg(long)]
        p: f64,
    },
    /// Carleson norm of a measure given as JSON
    CarlesonNorm {
        #[arg(long)]
        measure: PathBuf,
        /// Certified tolerance (default: scale-aware)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Budgeted search for the best transform ratio against a measure
    HyBound {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Stopping-time interval decomposition of a real step function
    Cz {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        alpha: f64,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        /// Population size (suite-specific default)
        #[arg(long)]
        n: Option<usize>,
        /// Restrict exponent-sweeping suites to one exponent
        #[arg(long)]
        p: Option<f64>,
    },
    /// Emit the per-exponent sharpness table
    Report {
        #[arg(long)]
        suite: String,
        /// Exponent grid "start:end:step", inclusive
        #[arg(long = "p-grid")]
        p_grid: String,
        /// Output format (csv)
        #[arg(long)]
        out: String,
        #[arg(long, default_value_t = 120)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A terminal outcome: what to print and how to exit.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<hyc_core::error::Error> for Failure {
    fn from(e: hyc_core::error::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = validate_threads_env() {
        eprintln!("error: {}", e.message);
        return ExitCode::from(e.code);
    }
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// `HYC_THREADS` caps internal parallelism; the library is single-threaded
/// today, so any positive integer is accepted and honored trivially.
fn validate_threads_env() -> Result<(), Failure> {
    match std::env::var("HYC_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(Failure::usage(format!(
                "HYC_THREADS must be a positive integer, got '{v}'"
            ))),
        },
    }
}

fn dispatch(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Constants { p } => constants(p),
        Cmd::CarlesonNorm { measure, tol } => carleson_norm_cmd(&measure, tol),
        Cmd::HyBound { measure, p, budget, seed } => hy_bound_cmd(&measure, p, budget, seed),
        Cmd::Cz { f, alpha } => cz_cmd(&f, alpha),
        Cmd::Verify { suite, seed, n, p } => verify_cmd(&suite, seed, n, p),
        Cmd::Report { suite, p_grid, out, budget, seed } => {
            report_cmd(&suite, &p_grid, &out, budget, seed)
        }
    }
}

/// Read a JSON input file: returns the parsed value plus the SHA-256 digest
/// of the raw bytes, for provenance embedding.
fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<(T, String), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let value = serde_json::from_slice(&bytes).map_err(|e| {
        Failure::usage(format!(
            "{}: malformed JSON at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    Ok((value, digest))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serialization"));
}

fn constants(p: f64) -> Result<u8, Failure> {
    let pp = conjugate_exponent(p)?;
    let b = babenko_constant(p)?;
    let opt = marcinkiewicz_optimum();
    print_json(&json!({
        "p": p,
        "p_conj": pp,
        "babenko": b,
        "babenko_pow_pconj": b.powf(pp),
        "hardy": hardy_constant(p)?,
        "m_bound": m_bound(p)?,
        "a1": a1_bound(p)?,
        "a2": a2_bound(p)?,
        "r0": opt.r0,
        "m": opt.m,
    }));
    Ok(0)
}

fn carleson_norm_cmd(path: &Path, tol: Option<f64>) -> Result<u8, Failure> {
    let (mu, digest): (HalfPlaneMeasure, _) = load_json(path)?;
    let tol = tol.unwrap_or_else(|| default_carleson_tol(&mu));
    let result = carleson_norm(&mu, tol)?;
    print_json(&json!({
        "command": "carleson-norm",
        "input": { "path": path.display().to_string(), "sha256": digest },
        "tol": tol,
        "result": result,
    }));
    Ok(0)
}

fn hy_bound_cmd(path: &Path, p: f64, budget: usize, seed: u64) -> Result<u8, Failure> {
    let (mu, digest): (HalfPlaneMeasure, _) = load_json(path)?;
    let est = hy_lower_bound(&mu, p, budget, seed)?;
    print_json(&json!({
        "command": "hy-bound",
        "input": { "path": path.display().to_string(), "sha256": digest },
        "result": est,
    }));
    Ok(0)
}

fn cz_cmd(path: &Path, alpha: f64) -> Result<u8, Failure> {
    let (f, digest): (RealStepFunction, _) = load_json(path)?;
    let result = cz_decompose(&f, alpha)?;
    print_json(&json!({
        "command": "cz",
        "input": { "path": path.display().to_string(), "sha256": digest },
        "result": result,
    }));
    Ok(0)
}

fn verify_cmd(suite: &str, seed: u64, n: Option<usize>, p: Option<f64>) -> Result<u8, Failure> {
    let kind: SuiteKind = suite.parse()?;
    let n = n.unwrap_or_else(|| kind.default_n());
    let report = run_suite(kind, seed, n, p)?;
    let pass = report.is_pass();
    print_json(&serde_json::to_value(&report).expect("report serialization"));
    Ok(if pass { 0 } else { 1 })
}

fn report_cmd(suite: &str, p_grid: &str, out: &str, budget: usize, seed: u64) -> Result<u8, Failure> {
    if suite != "sharpness" {
        return Err(Failure::usage(format!(
            "report supports --suite sharpness, got '{suite}'"
        )));
    }
    if out != "csv" {
        return Err(Failure::usage(format!("report supports --out csv, got '{out}'")));
    }
    let grid = parse_grid(p_grid)?;
    let mut csv = String::from(
        "p,p_conj,dirac_norm,dirac_lower,dy_norm,dy_lower,a1_envelope,a2_envelope\n",
    );
    for p in grid {
        let row = sharpness_row(p, budget, seed)?;
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            row.p,
            row.p_conj,
            row.dirac_norm,
            row.dirac_lower,
            row.dy_norm,
            row.dy_lower,
            row.a1_envelope,
            row.a2_envelope
        )
        .expect("string write");
    }
    print!("{csv}");
    Ok(0)
}

/// Parse "start:end:step" into an inclusive grid (tolerating the usual
/// floating-point endpoint dust).
fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::usage(format!(
            "grid must be start:end:step, got '{spec}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Failure::usage(format!("grid has a non-numeric part '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0 && start.is_finite() && end >= start) {
        return Err(Failure::usage(format!(
            "grid needs end >= start and step > 0, got '{spec}'"
        )));
    }
    let mut grid = Vec::new();
    let mut k = 0u32;
    loop {
        let p = start + step * f64::from(k);
        if p > end + 1e-9 * step.max(1.0) {
            break;
        }
        grid.push(p);
        k += 1;
        if k > 100_000 {
            return Err(Failure::usage(format!("grid '{spec}' has too many points")));
        }
    }
    Ok(grid)
}
