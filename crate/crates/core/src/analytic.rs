//! Closed-form results for the coupled oscillator: spectrum, eigenfunctions,
//! variances, uncertainty products, coherent-state expectations, and the
//! time-dependent first moments (quantum and classical).
//!
//! All formulas are expressed through [`DerivedQuantities`]; the effective
//! frequency is `big_omega` = sqrt(omega^2 - mu^2).

use num_complex::Complex64;

use crate::params::{DerivedQuantities, OscillatorParams};
use crate::special::hermite_function;

/// Coherent amplitude alpha = magnitude * e^{i phase}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentParams {
    magnitude: f64,
    phase: f64,
}

impl CoherentParams {
    /// Phase is canonicalized into [0, 2pi).
    pub fn new(magnitude: f64, phase: f64) -> Self {
        assert!(
            magnitude.is_finite() && magnitude >= 0.0,
            "coherent magnitude must be finite and non-negative, got {magnitude}"
        );
        let tau = 2.0 * std::f64::consts::PI;
        let mut canonical = phase.rem_euclid(tau);
        if canonical >= tau {
            canonical = 0.0;
        }
        Self {
            magnitude,
            phase: canonical,
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::from_polar(self.magnitude, self.phase)
    }
}

/// One (t, <x>, <p>) sample of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub t: f64,
    pub x: f64,
    pub p: f64,
}

/// First and second moments of position and momentum in a given state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
}

impl MomentSet {
    /// Delta x * Delta p.
    pub fn uncertainty_product(&self) -> f64 {
        (self.var_x * self.var_p).sqrt()
    }
}

/// E_n = hbar * big_omega * (n + 1/2).
pub fn energy(d: &DerivedQuantities, n: usize) -> f64 {
    d.params().hbar() * d.big_omega * (n as f64 + 0.5)
}

/// Eigenfunction psi_n(x): a real envelope (the normalized Hermite function
/// of the effective oscillator) times the coupling phase e^{-i m mu x^2 / 2 hbar}.
pub fn wave_function(d: &DerivedQuantities, n: usize, x: f64) -> Complex64 {
    let p = d.params();
    let scale = p.mass() * d.big_omega / p.hbar(); // 1 / length^2
    let xi = scale.sqrt() * x;
    let envelope = scale.powf(0.25) * hermite_function(n, xi);
    let phase = -p.mass() * p.mu() * x * x / (2.0 * p.hbar());
    Complex64::cis(phase) * envelope
}

/// Moments of the n-th eigenstate: both means vanish;
/// var x = hbar (2n+1) / (2 m big_omega), var p = hbar m omega^2 (2n+1) / (2 big_omega).
pub fn eigen_moments(d: &DerivedQuantities, n: usize) -> MomentSet {
    let p = d.params();
    let occ = 2.0 * n as f64 + 1.0;
    MomentSet {
        mean_x: 0.0,
        mean_p: 0.0,
        var_x: p.hbar() * occ / (2.0 * p.mass() * d.big_omega),
        var_p: p.hbar() * p.mass() * p.omega() * p.omega() * occ / (2.0 * d.big_omega),
    }
}

/// Delta x * Delta p for the n-th eigenstate: hbar omega (n + 1/2) / big_omega.
pub fn uncertainty_product(d: &DerivedQuantities, n: usize) -> f64 {
    d.params().hbar() * d.params().omega() * (n as f64 + 0.5) / d.big_omega
}

/// Least uncertainty product attainable by the eigenstate and coherent
/// families: hbar omega / (2 big_omega), i.e. the n = 0 product.
pub fn minimum_bound(d: &DerivedQuantities) -> f64 {
    uncertainty_product(d, 0)
}

fn x_amplitude_scale(d: &DerivedQuantities) -> f64 {
    let p = d.params();
    (p.hbar() / (2.0 * p.mass() * d.big_omega)).sqrt()
}

fn p_amplitude_scale(d: &DerivedQuantities) -> f64 {
    let p = d.params();
    (p.mass() * p.hbar() / (2.0 * d.big_omega)).sqrt()
}

/// Static moments of the coherent state |alpha>. The variances reproduce the
/// ground-state values, so the product sits exactly at the minimum bound for
/// every alpha.
pub fn coherent_moments(d: &DerivedQuantities, a: &CoherentParams) -> MomentSet {
    let p = d.params();
    let (mag, phi) = (a.magnitude(), a.phase());
    MomentSet {
        mean_x: 2.0 * x_amplitude_scale(d) * mag * phi.cos(),
        mean_p: 2.0 * p_amplitude_scale(d) * mag * (d.big_omega * phi.sin() - p.mu() * phi.cos()),
        var_x: p.hbar() / (2.0 * p.mass() * d.big_omega),
        var_p: p.hbar() * p.mass() * p.omega() * p.omega() / (2.0 * d.big_omega),
    }
}

/// Time-evolved coherent first moments.
///
/// The in-phase coupling contributions to <x(t)> cancel exactly, leaving
/// x(t) = 2 sqrt(hbar / 2 m big_omega) |alpha| cos(big_omega t - phi);
/// the momentum keeps its coupling term,
/// p(t) = -2 sqrt(m hbar / 2 big_omega) |alpha|
///        [mu cos(big_omega t - phi) + big_omega sin(big_omega t - phi)].
pub fn coherent_trajectory(d: &DerivedQuantities, a: &CoherentParams, t: f64) -> PhasePoint {
    let p = d.params();
    let arg = d.big_omega * t - a.phase();
    let x = 2.0 * x_amplitude_scale(d) * a.magnitude() * arg.cos();
    let pm = -2.0
        * p_amplitude_scale(d)
        * a.magnitude()
        * (p.mu() * arg.cos() + d.big_omega * arg.sin());
    PhasePoint { t, x, p: pm }
}

/// Alternative simplified closed form for <x(t)> that keeps an extra
/// (mu/big_omega) sin(big_omega t - phi) term. It disagrees with
/// [`coherent_trajectory`] (and with the propagated expectation value)
/// whenever mu != 0; it is emitted as the `x_eq41` column and quantified by
/// the verification report's erratum section rather than silently dropped.
pub fn coherent_position_simplified(d: &DerivedQuantities, a: &CoherentParams, t: f64) -> f64 {
    let arg = d.big_omega * t - a.phase();
    2.0 * x_amplitude_scale(d)
        * a.magnitude()
        * (arg.cos() + d.params().mu() / d.big_omega * arg.sin())
}

/// Closed-form solution of the classical equations of motion
/// xdot = p/m + mu x, pdot = -m omega^2 x - mu p, which combine into
/// xddot = -big_omega^2 x.
pub fn classical_trajectory(p: &OscillatorParams, x0: f64, p0: f64, t: f64) -> PhasePoint {
    let d = p.derived();
    let om = d.big_omega;
    let xdot0 = p0 / p.mass() + p.mu() * x0;
    let (s, c) = (om * t).sin_cos();
    let x = x0 * c + xdot0 / om * s;
    let xdot = -x0 * om * s + xdot0 * c;
    PhasePoint {
        t,
        x,
        p: p.mass() * (xdot - p.mu() * x),
    }
}

/// One fixed-step RK4 update of the classical equations of motion.
pub fn classical_rk4_step(p: &OscillatorParams, x: f64, pm: f64, dt: f64) -> (f64, f64) {
    let f = |x: f64, pm: f64| -> (f64, f64) {
        (
            pm / p.mass() + p.mu() * x,
            -p.mass() * p.omega() * p.omega() * x - p.mu() * pm,
        )
    };
    let (k1x, k1p) = f(x, pm);
    let (k2x, k2p) = f(x + 0.5 * dt * k1x, pm + 0.5 * dt * k1p);
    let (k3x, k3p) = f(x + 0.5 * dt * k2x, pm + 0.5 * dt * k2p);
    let (k4x, k4p) = f(x + dt * k3x, pm + dt * k3p);
    (
        x + dt * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0,
        pm + dt * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0,
    )
}

/// Integrates the classical equations from (x0, p0) over `steps` equal RK4
/// steps ending at time t.
pub fn classical_rk4(p: &OscillatorParams, x0: f64, p0: f64, t: f64, steps: usize) -> PhasePoint {
    assert!(steps > 0, "need at least one RK4 step");
    let dt = t / steps as f64;
    let (mut x, mut pm) = (x0, p0);
    for _ in 0..steps {
        (x, pm) = classical_rk4_step(p, x, pm, dt);
    }
    PhasePoint { t, x, p: pm }
}
