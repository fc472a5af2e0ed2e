//! Flag/file/default resolution. Every knob can come from a command-line
//! flag or a flat `key = value` config file; flags win over file values,
//! file values win over defaults, and unknown file keys are rejected before
//! any computation starts.

use std::path::{Path, PathBuf};

use xpho_core::params::OscillatorParams;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Raw optional settings as read from one source (flags or file).
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub mu: Option<f64>,
    pub hbar: Option<f64>,
    pub n_max: Option<usize>,
    pub fock_dim: Option<usize>,
    pub grid_n: Option<usize>,
    pub grid_span: Option<f64>,
    pub alpha: Option<f64>,
    pub phi: Option<f64>,
    pub horizon: Option<f64>,
    pub dt: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    /// Later sources are consulted only where `self` is unset.
    fn or(self, fallback: Overrides) -> Overrides {
        Overrides {
            mass: self.mass.or(fallback.mass),
            omega: self.omega.or(fallback.omega),
            mu: self.mu.or(fallback.mu),
            hbar: self.hbar.or(fallback.hbar),
            n_max: self.n_max.or(fallback.n_max),
            fock_dim: self.fock_dim.or(fallback.fock_dim),
            grid_n: self.grid_n.or(fallback.grid_n),
            grid_span: self.grid_span.or(fallback.grid_span),
            alpha: self.alpha.or(fallback.alpha),
            phi: self.phi.or(fallback.phi),
            horizon: self.horizon.or(fallback.horizon),
            dt: self.dt.or(fallback.dt),
            seed: self.seed.or(fallback.seed),
            format: self.format.or(fallback.format),
            out: self.out.or(fallback.out),
        }
    }
}

/// Fully resolved run settings with validated physical parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: OscillatorParams,
    /// Whether mu was given explicitly (verify otherwise sweeps a default set).
    pub mu_explicit: bool,
    pub n_max: usize,
    pub fock_dim: usize,
    pub grid_n: usize,
    pub grid_span: Option<f64>,
    /// Whether alpha or phi were given explicitly (coherent otherwise uses
    /// the default magnitude/phase matrix).
    pub alpha_explicit: bool,
    pub alpha: f64,
    pub phi: f64,
    pub horizon: Option<f64>,
    pub dt: Option<f64>,
    pub seed: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Documented defaults: natural units, reference coupling sweep handled by
/// `verify`, Fock dimension 64, auto grid of 4000 points, seed 42.
pub fn resolve(flags: Overrides, config_path: Option<&Path>) -> Result<RunConfig, CliError> {
    let file = match config_path {
        Some(path) => parse_config_file(path)?,
        None => Overrides::default(),
    };
    let mu_explicit = flags.mu.is_some() || file.mu.is_some();
    let alpha_explicit =
        flags.alpha.is_some() || flags.phi.is_some() || file.alpha.is_some() || file.phi.is_some();
    let merged = flags.or(file);

    let mass = merged.mass.unwrap_or(1.0);
    let omega = merged.omega.unwrap_or(1.0);
    let mu = merged.mu.unwrap_or(0.0);
    let hbar = merged.hbar.unwrap_or(1.0);
    let params =
        OscillatorParams::new(mass, omega, mu, hbar).map_err(|e| CliError::Usage(e.to_string()))?;

    let n_max = merged.n_max.unwrap_or(10);
    if n_max > 12 {
        return Err(CliError::Usage(format!(
            "--n-max {n_max} out of range: the solvers are calibrated for n-max <= 12"
        )));
    }
    let fock_dim = merged.fock_dim.unwrap_or(64);
    if fock_dim < 4 {
        return Err(CliError::Usage(format!(
            "--fock-dim {fock_dim} too small, need >= 4"
        )));
    }
    let grid_n = merged.grid_n.unwrap_or(4000);
    if grid_n < 64 {
        return Err(CliError::Usage(format!(
            "--grid-n {grid_n} too small, need >= 64"
        )));
    }
    if let Some(span) = merged.grid_span {
        if !span.is_finite() || span <= 0.0 {
            return Err(CliError::Usage(format!(
                "--grid-span {span} must be positive"
            )));
        }
    }
    let alpha = merged.alpha.unwrap_or(2.0);
    if !alpha.is_finite() || !(0.0..=4.0).contains(&alpha) {
        return Err(CliError::Usage(format!(
            "--alpha {alpha} out of range [0, 4]"
        )));
    }
    let phi = merged.phi.unwrap_or(0.0);
    if !phi.is_finite() {
        return Err(CliError::Usage(format!("--phi {phi} must be finite")));
    }
    if let Some(h) = merged.horizon {
        if !h.is_finite() || h <= 0.0 {
            return Err(CliError::Usage(format!("--horizon {h} must be positive")));
        }
    }
    if let Some(dt) = merged.dt {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(CliError::Usage(format!("--dt {dt} must be positive")));
        }
    }

    Ok(RunConfig {
        params,
        mu_explicit,
        n_max,
        fock_dim,
        grid_n,
        grid_span: merged.grid_span,
        alpha_explicit,
        alpha,
        phi,
        horizon: merged.horizon,
        dt: merged.dt,
        seed: merged.seed.unwrap_or(42),
        format: merged.format.unwrap_or(OutputFormat::Csv),
        out: merged.out,
    })
}

/// Flat `key = value` file, `#` comments, keys mirroring the flag names.
fn parse_config_file(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "{}:{}: expected `key = value`, got `{raw}`",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            CliError::Usage(format!(
                "{}:{}: invalid value `{value}` for `{key}` ({what})",
                path.display(),
                lineno + 1
            ))
        };
        match key {
            "mass" => o.mass = Some(value.parse().map_err(|_| bad("number"))?),
            "omega" => o.omega = Some(value.parse().map_err(|_| bad("number"))?),
            "mu" => o.mu = Some(value.parse().map_err(|_| bad("number"))?),
            "hbar" => o.hbar = Some(value.parse().map_err(|_| bad("number"))?),
            "n-max" => o.n_max = Some(value.parse().map_err(|_| bad("integer"))?),
            "fock-dim" => o.fock_dim = Some(value.parse().map_err(|_| bad("integer"))?),
            "grid-n" => o.grid_n = Some(value.parse().map_err(|_| bad("integer"))?),
            "grid-span" => o.grid_span = Some(value.parse().map_err(|_| bad("number"))?),
            "alpha" => o.alpha = Some(value.parse().map_err(|_| bad("number"))?),
            "phi" => o.phi = Some(value.parse().map_err(|_| bad("number"))?),
            "horizon" => o.horizon = Some(value.parse().map_err(|_| bad("number"))?),
            "dt" => o.dt = Some(value.parse().map_err(|_| bad("number"))?),
            "seed" => o.seed = Some(value.parse().map_err(|_| bad("integer"))?),
            "format" => {
                o.format = Some(match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad("csv or json")),
                })
            }
            "out" => o.out = Some(PathBuf::from(value)),
            other => {
                return Err(CliError::Usage(format!(
                    "{}:{}: unknown config key `{other}`",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(o)
}
