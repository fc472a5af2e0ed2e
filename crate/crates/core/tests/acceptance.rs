//! Acceptance suite: one test per exit criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`). Tolerances
//! are pinned here, not configurable.
//!
//! 1. spectrum agreement (grid 1e-3 at N=4000 auto domain, Fock 1e-10)
//!    across the coupling sweep, within the runtime budget;
//! 2. uncertainty products by three routes and the exact family minimum;
//! 3. coherent minimality with phase- and time-independent variances;
//! 4. dynamics triple agreement (Fock 1e-8, Crank-Nicolson 1e-4 at the
//!    pinned step/grid, classical 1e-6), within the runtime budget;
//! 5. the measurable effect of the quadratic phase factor on var p;
//! 6. reproduction of the simplified-trajectory erratum gap;
//! 7. property suites and byte-identical determinism of the default
//!    verification report.

use std::time::Instant;

use num_complex::Complex64;
use xpho_core::analytic::{self, CoherentParams};
use xpho_core::fock::{self, StateVector};
use xpho_core::grid::{self, GridSpec};
use xpho_core::harness::{self, VerifyConfig};
use xpho_core::params::OscillatorParams;
use xpho_core::special;

const SWEEP: [f64; 4] = [0.0, 0.3, 0.6, 0.9];

fn natural(mu: f64) -> OscillatorParams {
    OscillatorParams::natural(mu).unwrap()
}

#[test]
fn criterion_1_spectrum() {
    let start = Instant::now();
    for mu in SWEEP {
        let params = natural(mu);
        let d = params.derived();
        let g = GridSpec::auto_for_states(&params, 10, 4000);
        let solved = grid::solve_lowest(&grid::build_hamiltonian(&params, &g), 11).unwrap();
        for (n, &e) in solved.energies.iter().enumerate() {
            let expect = analytic::energy(&d, n);
            let rel = (e - expect).abs() / expect;
            assert!(rel <= 1e-3, "mu={mu} n={n}: grid rel err {rel:.2e}");
        }
        let fs = fock::build_fock_set(&params, 64).unwrap();
        for n in 0..=61 {
            let expect = analytic::energy(&d, n);
            let err = (fs.h.entry(n, n).re - expect).abs();
            assert!(
                err <= 1e-10 * expect.max(1.0),
                "mu={mu} n={n}: fock diag err {err:.2e}"
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed <= 60.0, "spectrum sweep took {elapsed:.1}s");
    println!("acceptance 1 (spectrum, {elapsed:.2}s): PASS");
}

#[test]
fn criterion_2_uncertainty_bound() {
    for mu in SWEEP {
        let params = natural(mu);
        let d = params.derived();
        let bound = analytic::minimum_bound(&d);
        let fs = fock::build_fock_set(&params, 64).unwrap();
        let g = GridSpec::auto_for_states(&params, 8, 4000);
        let solved = grid::solve_lowest(&grid::build_hamiltonian(&params, &g), 9).unwrap();
        let mut family_min = f64::INFINITY;
        for n in 0..=8 {
            let expect = analytic::uncertainty_product(&d, n);
            let s = StateVector::basis(n, 64);
            let fock_product = fock::product_of_uncertainties(&s, &fs).unwrap();
            assert!(
                (fock_product - expect).abs() <= 1e-10 * expect.max(1.0),
                "mu={mu} n={n} fock product"
            );
            let m = grid::moments_on_grid(&solved.states[n], &g, &params);
            let grid_product = m.uncertainty_product();
            assert!(
                (grid_product - expect).abs() <= 1e-3 * expect.max(1.0),
                "mu={mu} n={n} grid product {grid_product} vs {expect}"
            );
            family_min = family_min.min(expect).min(fock_product);
        }
        assert!(
            (family_min - bound).abs() <= 1e-12 * bound,
            "mu={mu} family minimum"
        );
    }
    // Reference values are exact arithmetic.
    let b06 = analytic::minimum_bound(&natural(0.6).derived());
    assert!((b06 - 0.625).abs() < 1e-15);
    let b0 = analytic::minimum_bound(&natural(0.0).derived());
    assert!((b0 - 0.5).abs() < 1e-15);
    println!("acceptance 2 (uncertainty bound): PASS");
}

#[test]
fn criterion_3_coherent_minimality() {
    for mu in SWEEP {
        let params = natural(mu);
        let d = params.derived();
        let bound = analytic::minimum_bound(&d);
        let fs = fock::build_fock_set(&params, 64).unwrap();
        let period = 2.0 * std::f64::consts::PI / d.big_omega;
        for mag in [0.5, 2.0, 3.0] {
            for phi in [
                0.0,
                std::f64::consts::FRAC_PI_4,
                std::f64::consts::FRAC_PI_2,
            ] {
                let a = CoherentParams::new(mag, phi);
                let v = fock::coherent_vector(&a, 64).unwrap();
                let vx = fock::variance(&v, &fs.x).unwrap();
                let vp = fock::variance(&v, &fs.p).unwrap();
                let product = (vx * vp).sqrt();
                assert!(
                    (product - bound).abs() <= 1e-8 * bound.max(1.0),
                    "mu={mu} alpha={mag} phi={phi}: product {product} vs {bound}"
                );
                // time independence across two periods
                for i in 0..=20 {
                    let t = 2.0 * period * i as f64 / 20.0;
                    let moved = fock::evolve(&v, &d, t);
                    assert!(
                        (fock::variance(&moved, &fs.x).unwrap() - vx).abs() <= 1e-10,
                        "mu={mu} alpha={mag} phi={phi} t={t}: var x drift"
                    );
                    assert!(
                        (fock::variance(&moved, &fs.p).unwrap() - vp).abs() <= 1e-10,
                        "mu={mu} alpha={mag} phi={phi} t={t}: var p drift"
                    );
                }
            }
            // phase independence at fixed magnitude
            let reference = {
                let v = fock::coherent_vector(&CoherentParams::new(mag, 0.0), 64).unwrap();
                fock::variance(&v, &fs.x).unwrap()
            };
            for phi in [std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2] {
                let v = fock::coherent_vector(&CoherentParams::new(mag, phi), 64).unwrap();
                let vx = fock::variance(&v, &fs.x).unwrap();
                assert!(
                    (vx - reference).abs() <= 1e-10,
                    "mu={mu} mag={mag} phi={phi}"
                );
            }
        }
    }
    println!("acceptance 3 (coherent minimality): PASS");
}

#[test]
fn criterion_4_dynamics_triple_agreement() {
    let start = Instant::now();
    let params = natural(0.6);
    let d = params.derived();
    let a = CoherentParams::new(2.0, 0.0);
    let horizon = 4.0 * std::f64::consts::PI / d.big_omega;
    let fs = fock::build_fock_set(&params, 64).unwrap();
    let v = fock::coherent_vector(&a, 64).unwrap();
    let m0 = analytic::coherent_moments(&d, &a);

    // Fock diagonal evolution and classical RK4 vs the closed form,
    // 200 samples over two periods.
    let samples = 200usize;
    let sample_dt = horizon / (samples - 1) as f64;
    let substeps = (sample_dt / 1e-3).ceil() as usize;
    let rk_dt = sample_dt / substeps as f64;
    let (mut cx, mut cp) = (m0.mean_x, m0.mean_p);
    let mut worst_fock = 0.0f64;
    let mut worst_classical = 0.0f64;
    for i in 0..samples {
        let t = i as f64 * sample_dt;
        if i > 0 {
            for _ in 0..substeps {
                (cx, cp) = analytic::classical_rk4_step(&params, cx, cp, rk_dt);
            }
        }
        let moved = fock::evolve(&v, &d, t);
        let fock_x = fock::expectation(&moved, &fs.x).unwrap().re;
        let fock_p = fock::expectation(&moved, &fs.p).unwrap().re;
        let closed = analytic::coherent_trajectory(&d, &a, t);
        worst_fock = worst_fock
            .max((fock_x - closed.x).abs())
            .max((fock_p - closed.p).abs());
        worst_classical = worst_classical
            .max((cx - fock_x).abs())
            .max((cp - fock_p).abs());
    }
    assert!(worst_fock <= 1e-8, "fock vs analytic: {worst_fock:.2e}");
    assert!(
        worst_classical <= 1e-6,
        "classical vs propagated: {worst_classical:.2e}"
    );

    // Crank-Nicolson at the pinned step and grid; the packet the pinned
    // 2048-point grid resolves is |alpha| = 1, tracked over one period.
    let cn_alpha = CoherentParams::new(1.0, 0.0);
    let g = GridSpec::auto_for_coherent(&params, 1.0, 2048);
    let ham = grid::build_hamiltonian(&params, &g);
    let mut state = grid::synthesize_coherent(&d, &cn_alpha, &g);
    let dt = 1e-3 / d.big_omega;
    let period = 2.0 * std::f64::consts::PI / d.big_omega;
    let chunk = 64usize;
    let n_chunks = (period / (dt * chunk as f64)).ceil() as usize;
    let mut worst_cn = 0.0f64;
    let mut t = 0.0;
    for _ in 0..n_chunks {
        state = grid::propagate(&state, &ham, dt, chunk).unwrap();
        t += dt * chunk as f64;
        let m = grid::moments_on_grid(&state, &g, &params);
        let closed = analytic::coherent_trajectory(&d, &cn_alpha, t);
        worst_cn = worst_cn
            .max((m.mean_x - closed.x).abs())
            .max((m.mean_p - closed.p).abs());
    }
    assert!(
        worst_cn <= 1e-4,
        "crank-nicolson vs analytic: {worst_cn:.2e}"
    );

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed <= 60.0, "dynamics took {elapsed:.1}s");
    println!("acceptance 4 (dynamics triple agreement, {elapsed:.2}s): PASS");
}

#[test]
fn criterion_5_phase_factor_effect() {
    let params = natural(0.6);
    let d = params.derived();
    let g = GridSpec::new(-10.0, 10.0, 4000);
    let full = grid::sample_eigenstate(&d, 0, &g);
    let stripped: Vec<Complex64> = full.iter().map(|v| Complex64::from(v.norm())).collect();
    let vp_full = grid::moments_on_grid(&full, &g, &params).var_p;
    let vp_stripped = grid::moments_on_grid(&stripped, &g, &params).var_p;
    assert!(
        (vp_full - 0.625).abs() <= 1e-3 * 0.625,
        "full var p {vp_full}"
    );
    assert!(
        (vp_stripped - 0.4).abs() <= 1e-3 * 0.4,
        "stripped var p {vp_stripped}"
    );
    // ratio omega^2 / big_omega^2 vs 1
    let ratio = vp_full / vp_stripped;
    assert!((ratio - 1.0 / 0.64).abs() <= 2e-3 * (1.0 / 0.64));
    println!("acceptance 5 (phase-factor effect): PASS");
}

#[test]
fn criterion_6_erratum_reproduction() {
    let params = natural(0.6);
    let d = params.derived();
    let a = CoherentParams::new(2.0, 0.0);
    let fs = fock::build_fock_set(&params, 64).unwrap();
    let v = fock::coherent_vector(&a, 64).unwrap();
    let horizon = 4.0 * std::f64::consts::PI / d.big_omega;
    let samples = 200usize;
    let mut max_gap = 0.0f64;
    let mut worst_eq40 = 0.0f64;
    for i in 0..samples {
        let t = i as f64 * horizon / (samples - 1) as f64;
        let moved = fock::evolve(&v, &d, t);
        let propagated = fock::expectation(&moved, &fs.x).unwrap().re;
        let simplified = analytic::coherent_position_simplified(&d, &a, t);
        let unsimplified = analytic::coherent_trajectory(&d, &a, t).x;
        max_gap = max_gap.max((simplified - propagated).abs());
        worst_eq40 = worst_eq40.max((unsimplified - propagated).abs());
    }
    // Spurious-term amplitude 2 sqrt(0.625) * 2 * (0.6/0.8) = 2.3717...
    let amplitude = 2.371708245126284;
    assert!(
        (max_gap - amplitude).abs() <= 1e-3 * amplitude,
        "erratum max {max_gap} vs {amplitude}"
    );
    assert!(
        worst_eq40 <= 1e-8,
        "unsimplified form should track propagation: {worst_eq40:.2e}"
    );

    // Without coupling the simplified and unsimplified forms coincide.
    let free = natural(0.0);
    let fd = free.derived();
    let ffs = fock::build_fock_set(&free, 64).unwrap();
    let fv = fock::coherent_vector(&a, 64).unwrap();
    let mut gap0 = 0.0f64;
    for i in 0..samples {
        let t = i as f64 * 12.0 / (samples - 1) as f64;
        let moved = fock::evolve(&fv, &fd, t);
        let propagated = fock::expectation(&moved, &ffs.x).unwrap().re;
        gap0 = gap0.max((analytic::coherent_position_simplified(&fd, &a, t) - propagated).abs());
    }
    assert!(gap0 <= 1e-12, "erratum gap without coupling: {gap0:.2e}");
    println!("acceptance 6 (erratum reproduction): PASS");
}

#[test]
fn criterion_7_property_suites_and_determinism() {
    // Operator identities on the truncated ladder algebra.
    for mu in SWEEP {
        let params = natural(mu);
        let fs = fock::build_fock_set(&params, 32).unwrap();
        for op in [&fs.x, &fs.p, &fs.h] {
            assert!(op.hermiticity_defect() <= 1e-12 * op.max_entry().max(1.0));
        }
        let comm = fs.x.matrix() * fs.p.matrix() - fs.p.matrix() * fs.x.matrix();
        for i in 0..30 {
            for j in 0..30 {
                let expect = if i == j {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert!(
                    (comm[(i, j)] - expect).norm() <= 1e-10,
                    "mu={mu} [x,p] at ({i},{j})"
                );
            }
        }
    }

    // Hermite orthonormality under Gauss-Hermite quadrature.
    let rule = special::gauss_hermite(64).unwrap();
    for m in (0..=40).step_by(8) {
        for n in (0..=40).step_by(8) {
            let overlap = rule.integrate(|x| {
                let half = (0.5 * x * x).exp();
                (special::hermite_function(m, x) * half) * (special::hermite_function(n, x) * half)
            });
            let expect = if m == n { 1.0 } else { 0.0 };
            assert!(
                (overlap - expect).abs() <= 1e-10,
                "h_{m} . h_{n} = {overlap}"
            );
        }
    }

    // Ehrenfest relation by centered differences on the closed trajectory.
    let d = natural(0.6).derived();
    let a = CoherentParams::new(1.5, 0.9);
    let delta = 1e-5;
    for i in 0..30 {
        let t = i as f64 * 0.5;
        let ahead = analytic::coherent_trajectory(&d, &a, t + delta).x;
        let behind = analytic::coherent_trajectory(&d, &a, t - delta).x;
        let pt = analytic::coherent_trajectory(&d, &a, t);
        let lhs = (ahead - behind) / (2.0 * delta);
        assert!(
            (lhs - (pt.p + 0.6 * pt.x)).abs() <= 1e-6,
            "ehrenfest at t={t}"
        );
    }

    // Default verification run: every check green, report byte-identical,
    // Heisenberg floor respected by all 1000 seeded superpositions per
    // coupling, convergence ratios in the second-order window.
    let cfg = VerifyConfig::default();
    assert_eq!(cfg.seed, 42);
    let report = harness::run_all(&cfg).unwrap();
    for c in &report.checks {
        assert!(
            c.passed,
            "default verify check failed: {} (expected {}, observed {}, tol {})",
            c.name, c.expected, c.observed, c.tolerance
        );
    }
    for c in report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("spectrum/convergence-ratio"))
    {
        assert!(
            c.observed >= 3.5 && c.observed <= 4.5,
            "{}: {}",
            c.name,
            c.observed
        );
    }
    assert!(report.checks.iter().any(|c| c
        .name
        .starts_with("uncertainty/heisenberg-floor-violations")));
    for record in &report.exploration {
        assert_eq!(record.samples, 1000);
        assert!(record.min_product >= 0.5 - 1e-9);
    }
    let again = harness::run_all(&cfg).unwrap();
    assert_eq!(
        report.to_json(),
        again.to_json(),
        "report must be byte-identical"
    );
    println!(
        "acceptance 7 (property suites + deterministic verify, {} checks): PASS",
        report.summary.total
    );
}
