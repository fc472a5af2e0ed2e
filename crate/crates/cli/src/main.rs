//! Command-line front end for the coupled-oscillator laboratory.
//!
//! Data goes to stdout (or `--out`); diagnostics go to stderr. Exit codes:
//! 0 success, 1 verification failure, 2 usage/validation error, 3 numerical
//! solver failure.

mod config;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{resolve, OutputFormat, Overrides, RunConfig};
use xpho_core::harness::{self, VerifyConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config keys, or physical parameters (exit 2).
    Usage(String),
    /// A numerical routine failed (exit 3).
    Solver(String),
}

impl CliError {
    fn solver<E: std::fmt::Display>(err: E) -> Self {
        CliError::Solver(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "xpho",
    version,
    about = "Harmonic oscillator with position-momentum coupling: spectra, \
             uncertainty products, coherent dynamics, and cross-route verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Particle mass
    #[arg(long, global = true)]
    mass: Option<f64>,
    /// Oscillator frequency omega
    #[arg(long, global = true)]
    omega: Option<f64>,
    /// Position-momentum coupling mu (|mu| < omega)
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// Action scale hbar
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Highest eigenstate index (and the sampled state for `eigenstate`)
    #[arg(long = "n-max", global = true)]
    n_max: Option<usize>,
    /// Truncated Fock-space dimension
    #[arg(long = "fock-dim", global = true)]
    fock_dim: Option<usize>,
    /// Number of position-grid points
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,
    /// Half-width of the position grid (default: auto-sized)
    #[arg(long = "grid-span", global = true)]
    grid_span: Option<f64>,
    /// Coherent amplitude |alpha|
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Coherent phase phi (radians)
    #[arg(long, global = true)]
    phi: Option<f64>,
    /// Time horizon for trajectories
    #[arg(long, global = true)]
    horizon: Option<f64>,
    /// Crank-Nicolson step (default: 1e-3 / big_omega)
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Seed for the exploration sampler
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Config file with `key = value` lines mirroring the flag names
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenenergies by all three routes
    Spectrum,
    /// Samples of the eigenfunction with index --n-max
    Eigenstate,
    /// Eigenstate uncertainty products and the family bound
    Uncertainty,
    /// Coherent-state moments in the Fock route
    Coherent,
    /// Time-evolved coherent first moments along every route
    Evolve,
    /// Classical trajectory (closed form and RK4)
    Classical,
    /// Full cross-validation run; exit 1 if any check fails
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Overrides {
        mass: cli.mass,
        omega: cli.omega,
        mu: cli.mu,
        hbar: cli.hbar,
        n_max: cli.n_max,
        fock_dim: cli.fock_dim,
        grid_n: cli.grid_n,
        grid_span: cli.grid_span,
        alpha: cli.alpha,
        phi: cli.phi,
        horizon: cli.horizon,
        dt: cli.dt,
        seed: cli.seed,
        format: cli.format,
        out: cli.out,
    };
    let run = resolve(flags, cli.config.as_deref()).and_then(|cfg| dispatch(&cli.command, &cfg));
    match run {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Solver(msg)) => {
            eprintln!("solver error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<ExitCode, CliError> {
    let table = match command {
        Command::Spectrum => tables::spectrum(cfg)?,
        Command::Eigenstate => tables::eigenstate(cfg)?,
        Command::Uncertainty => tables::uncertainty(cfg)?,
        Command::Coherent => tables::coherent(cfg)?,
        Command::Evolve => tables::evolve(cfg)?,
        Command::Classical => tables::classical(cfg)?,
        Command::Verify => return verify(cfg),
    };
    let payload = match cfg.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    };
    emit(cfg, &payload)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(cfg: &RunConfig) -> Result<ExitCode, CliError> {
    let mu_sweep = if cfg.mu_explicit {
        vec![cfg.params.mu()]
    } else {
        let omega = cfg.params.omega();
        vec![0.0, 0.3 * omega, 0.6 * omega, 0.9 * omega]
    };
    let mut vc = VerifyConfig {
        mass: cfg.params.mass(),
        omega: cfg.params.omega(),
        hbar: cfg.params.hbar(),
        mu_sweep,
        fock_dim: cfg.fock_dim,
        grid_points: cfg.grid_n,
        grid_half_width: cfg.grid_span,
        n_max: cfg.n_max,
        horizon: cfg.horizon,
        dt: cfg.dt,
        seed: cfg.seed,
        ..VerifyConfig::default()
    };
    if cfg.alpha_explicit {
        vc.dynamics_alpha = (cfg.alpha, cfg.phi);
    }
    let report = harness::run_all(&vc).map_err(|e| match e {
        harness::HarnessError::InvalidSweepEntry { .. } | harness::HarnessError::Params(_) => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Solver(other.to_string()),
    })?;
    let payload = match cfg.format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    };
    emit(cfg, &payload)?;
    eprintln!(
        "verify: {}/{} checks passed",
        report.summary.passed, report.summary.total
    );
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for c in report.checks.iter().filter(|c| !c.passed) {
            eprintln!(
                "FAILED {} (expected {}, observed {}, tolerance {})",
                c.name, c.expected, c.observed, c.tolerance
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn emit(cfg: &RunConfig, payload: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}
