//! Column-oriented result tables and the subcommand computations that fill
//! them. CSV cells use the shortest round-trip decimal representation, so
//! golden files are byte-stable without precision loss.

use xpho_core::analytic::{self, CoherentParams};
use xpho_core::fock;
use xpho_core::grid::{self, GridSpec};

use crate::config::RunConfig;
use crate::CliError;

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut body = serde_json::to_string_pretty(&serde_json::json!({
            "columns": self.columns,
            "rows": self.rows,
        }))
        .expect("table serialization");
        body.push('\n');
        body
    }
}

fn grid_for_states(cfg: &RunConfig, n_max: usize) -> GridSpec {
    match cfg.grid_span {
        Some(w) => GridSpec::new(-w, w, cfg.grid_n),
        None => GridSpec::auto_for_states(&cfg.params, n_max, cfg.grid_n),
    }
}

/// n, E_analytic, E_grid, E_fock, relErr (worst of the two numeric routes).
pub fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let d = cfg.params.derived();
    let g = grid_for_states(cfg, cfg.n_max);
    let ham = grid::build_hamiltonian(&cfg.params, &g);
    let solved = grid::solve_lowest(&ham, cfg.n_max + 1).map_err(CliError::solver)?;
    let fs = fock::build_fock_set(&cfg.params, cfg.fock_dim).map_err(CliError::solver)?;
    let mut table = Table::new(vec!["n", "E_analytic", "E_grid", "E_fock", "relErr"]);
    for n in 0..=cfg.n_max {
        let exact = analytic::energy(&d, n);
        let e_grid = solved.energies[n];
        let e_fock = fs.h.entry(n, n).re;
        let rel = ((e_grid - exact).abs().max((e_fock - exact).abs())) / exact;
        table.push(vec![n as f64, exact, e_grid, e_fock, rel]);
    }
    Ok(table)
}

/// x, Re psi_n, Im psi_n, |psi_n|^2 for n = n_max, sampled on the grid.
pub fn eigenstate(cfg: &RunConfig) -> Result<Table, CliError> {
    let d = cfg.params.derived();
    let n = cfg.n_max;
    let g = grid_for_states(cfg, n);
    let mut table = Table::new(vec!["x", "re_psi", "im_psi", "abs2_psi"]);
    for x in g.points() {
        let v = analytic::wave_function(&d, n, x);
        table.push(vec![x, v.re, v.im, v.norm_sqr()]);
    }
    Ok(table)
}

/// n, Delta x, Delta p, product, bound from the closed forms.
pub fn uncertainty(cfg: &RunConfig) -> Result<Table, CliError> {
    let d = cfg.params.derived();
    let bound = analytic::minimum_bound(&d);
    let mut table = Table::new(vec!["n", "delta_x", "delta_p", "product", "bound"]);
    for n in 0..=cfg.n_max {
        let m = analytic::eigen_moments(&d, n);
        table.push(vec![
            n as f64,
            m.var_x.sqrt(),
            m.var_p.sqrt(),
            analytic::uncertainty_product(&d, n),
            bound,
        ]);
    }
    Ok(table)
}

/// |alpha|, phi, <x>, <p>, var x, var p, product — Fock route, for either
/// the explicit (alpha, phi) or the default magnitude/phase matrix.
pub fn coherent(cfg: &RunConfig) -> Result<Table, CliError> {
    let combos: Vec<(f64, f64)> = if cfg.alpha_explicit {
        vec![(cfg.alpha, cfg.phi)]
    } else {
        let mut v = Vec::new();
        for mag in [0.5, 2.0, 3.0] {
            for phi in [
                0.0,
                std::f64::consts::FRAC_PI_4,
                std::f64::consts::FRAC_PI_2,
            ] {
                v.push((mag, phi));
            }
        }
        v
    };
    let fs = fock::build_fock_set(&cfg.params, cfg.fock_dim).map_err(CliError::solver)?;
    let mut table = Table::new(vec![
        "alpha", "phi", "mean_x", "mean_p", "var_x", "var_p", "product",
    ]);
    for (mag, phi) in combos {
        let a = CoherentParams::new(mag, phi);
        let v = fock::coherent_vector(&a, cfg.fock_dim).map_err(CliError::solver)?;
        let mean_x = fock::expectation(&v, &fs.x).map_err(CliError::solver)?.re;
        let mean_p = fock::expectation(&v, &fs.p).map_err(CliError::solver)?.re;
        let var_x = fock::variance(&v, &fs.x).map_err(CliError::solver)?;
        let var_p = fock::variance(&v, &fs.p).map_err(CliError::solver)?;
        table.push(vec![
            mag,
            a.phase(),
            mean_x,
            mean_p,
            var_x,
            var_p,
            (var_x * var_p).sqrt(),
        ]);
    }
    Ok(table)
}

/// t, x_analytic, p_analytic, x_fock, p_fock, x_cn, p_cn, x_eq41: the three
/// quantum routes side by side plus the simplified trajectory column.
pub fn evolve(cfg: &RunConfig) -> Result<Table, CliError> {
    let d = cfg.params.derived();
    let a = CoherentParams::new(cfg.alpha, cfg.phi);
    let horizon = cfg
        .horizon
        .unwrap_or(4.0 * std::f64::consts::PI / d.big_omega);
    let dt = cfg.dt.unwrap_or(1e-3 / d.big_omega);

    let fs = fock::build_fock_set(&cfg.params, cfg.fock_dim).map_err(CliError::solver)?;
    let v = fock::coherent_vector(&a, cfg.fock_dim).map_err(CliError::solver)?;

    let g = match cfg.grid_span {
        Some(w) => GridSpec::new(-w, w, cfg.grid_n),
        None => GridSpec::auto_for_coherent(&cfg.params, a.magnitude(), cfg.grid_n),
    };
    let ham = grid::build_hamiltonian(&cfg.params, &g);
    let mut state = grid::synthesize_coherent(&d, &a, &g);

    // Samples sit on the Crank-Nicolson step lattice.
    let samples = 200usize;
    let stride = ((horizon / dt) / samples as f64).round().max(1.0) as usize;
    let mut table = Table::new(vec![
        "t",
        "x_analytic",
        "p_analytic",
        "x_fock",
        "p_fock",
        "x_cn",
        "p_cn",
        "x_eq41",
    ]);
    for i in 0..=samples {
        let t = (i * stride) as f64 * dt;
        if i > 0 {
            state = grid::propagate(&state, &ham, dt, stride).map_err(CliError::solver)?;
        }
        let closed = analytic::coherent_trajectory(&d, &a, t);
        let moved = fock::evolve(&v, &d, t);
        let x_fock = fock::expectation(&moved, &fs.x)
            .map_err(CliError::solver)?
            .re;
        let p_fock = fock::expectation(&moved, &fs.p)
            .map_err(CliError::solver)?
            .re;
        let m = grid::moments_on_grid(&state, &g, &cfg.params);
        table.push(vec![
            t,
            closed.x,
            closed.p,
            x_fock,
            p_fock,
            m.mean_x,
            m.mean_p,
            analytic::coherent_position_simplified(&d, &a, t),
        ]);
    }
    Ok(table)
}

/// t, x_closed, p_closed, x_rk4, p_rk4: classical trajectory seeded with the
/// coherent-state means.
pub fn classical(cfg: &RunConfig) -> Result<Table, CliError> {
    let d = cfg.params.derived();
    let a = CoherentParams::new(cfg.alpha, cfg.phi);
    let m0 = analytic::coherent_moments(&d, &a);
    let horizon = cfg
        .horizon
        .unwrap_or(4.0 * std::f64::consts::PI / d.big_omega);
    let samples = 200usize;
    let sample_dt = horizon / samples as f64;
    let substeps = (sample_dt / 1e-3).ceil().max(1.0) as usize;
    let rk_dt = sample_dt / substeps as f64;

    let mut table = Table::new(vec!["t", "x_closed", "p_closed", "x_rk4", "p_rk4"]);
    let (mut x, mut p) = (m0.mean_x, m0.mean_p);
    for i in 0..=samples {
        let t = i as f64 * sample_dt;
        if i > 0 {
            for _ in 0..substeps {
                (x, p) = analytic::classical_rk4_step(&cfg.params, x, p, rk_dt);
            }
        }
        let closed = analytic::classical_trajectory(&cfg.params, m0.mean_x, m0.mean_p, t);
        table.push(vec![t, closed.x, closed.p, x, p]);
    }
    Ok(table)
}
