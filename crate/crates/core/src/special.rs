//! Special-function kernels: Hermite polynomials, normalized Hermite
//! functions, Gauss–Hermite quadrature, and log-factorials.
//!
//! Everything here is dependency-free and stable for the index ranges the
//! rest of the crate needs (normalized functions up to n = 1000, quadrature
//! rules up to 512 nodes).

use thiserror::Error;

/// Largest quadrature order supported by [`gauss_hermite`].
pub const MAX_QUADRATURE_ORDER: usize = 512;

/// Size of the precomputed log-factorial table.
const LOG_FACTORIAL_TABLE_LEN: usize = 1025;

#[derive(Debug, Error, PartialEq)]
pub enum SpecialError {
    /// Newton iteration for a quadrature node failed to reach tolerance.
    #[error("Gauss-Hermite node {node} of a {order}-point rule did not converge")]
    ConvergenceFailure { order: usize, node: usize },
}

/// Physicists' Hermite polynomial H_n(xi) by the three-term recurrence
/// H_{k+1} = 2 xi H_k - 2 k H_{k-1}.
///
/// Raw polynomial values overflow f64 near n ~ 160; use
/// [`hermite_function`] for large n.
pub fn hermite_poly(n: usize, xi: f64) -> f64 {
    let mut hm = 0.0; // H_{-1}
    let mut h = 1.0; // H_0
    for k in 0..n {
        let next = 2.0 * xi * h - 2.0 * (k as f64) * hm;
        hm = h;
        h = next;
    }
    h
}

/// Normalized Hermite function
/// h_n(xi) = H_n(xi) e^{-xi^2/2} / (pi^{1/4} sqrt(2^n n!)).
///
/// The recurrence runs on the normalized polynomial part
/// g_k = H_k / sqrt(2^k k!) with dynamic power-of-two rescaling, so values
/// stay finite for n <= 1000, |xi| <= 40 even where g_k alone would
/// overflow or the Gaussian alone would underflow.
pub fn hermite_function(n: usize, xi: f64) -> f64 {
    const PI_QUARTER_LN: f64 = 0.286_182_471_462_350_04; // ln(pi)/4
    const RESCALE_THRESHOLD: f64 = 1e250;
    const RESCALE: f64 = 7.466_108_948_025_751e-301; // 2^{-997}, exact
    const RESCALE_LOG2: i64 = 997;

    let mut gm = 0.0; // g_{-1}
    let mut g = 1.0; // g_0
    let mut shift: i64 = 0; // accumulated log2 scale
    for k in 0..n {
        let kf = k as f64;
        let next = xi * (2.0 / (kf + 1.0)).sqrt() * g - (kf / (kf + 1.0)).sqrt() * gm;
        gm = g;
        g = next;
        if g.abs() > RESCALE_THRESHOLD || gm.abs() > RESCALE_THRESHOLD {
            g *= RESCALE;
            gm *= RESCALE;
            shift += RESCALE_LOG2;
        }
    }
    if shift == 0 {
        // Common path: plain double-precision evaluation.
        g * (-0.5 * xi * xi).exp() * (-PI_QUARTER_LN).exp()
    } else {
        let ln_mag =
            g.abs().ln() + shift as f64 * std::f64::consts::LN_2 - 0.5 * xi * xi - PI_QUARTER_LN;
        g.signum() * ln_mag.exp()
    }
}

/// ln(n!), exact to ~1e-15 relative.
///
/// Values for n <= 1024 come from a compensated cumulative-sum table;
/// larger n use the Stirling series, which is already converged there.
pub fn log_factorial(n: usize) -> f64 {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LOG_FACTORIAL_TABLE_LEN);
        let mut sum = 0.0;
        let mut comp = 0.0; // Kahan compensation
        t.push(0.0);
        for k in 1..LOG_FACTORIAL_TABLE_LEN {
            let term = (k as f64).ln() - comp;
            let next = sum + term;
            comp = (next - sum) - term;
            sum = next;
            t.push(sum);
        }
        t
    });
    if n < table.len() {
        table[n]
    } else {
        stirling_ln_gamma(n as f64 + 1.0)
    }
}

/// Stirling series for ln Gamma(z), adequate for z > 1000.
fn stirling_ln_gamma(z: f64) -> f64 {
    let zi = 1.0 / z;
    let zi2 = zi * zi;
    (z - 0.5) * z.ln() - z
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + zi * (1.0 / 12.0 - zi2 * (1.0 / 360.0 - zi2 / 1260.0))
}

/// Gauss–Hermite rule: nodes and weights for integrals of the form
/// \int e^{-xi^2} f(xi) d(xi).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature of e^{-xi^2} * integrand(xi) over the whole real line.
    pub fn integrate<F: Fn(f64) -> f64>(&self, integrand: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * integrand(x))
            .sum()
    }
}

/// Builds the k-point Gauss–Hermite rule (exact for polynomial degree
/// <= 2k-1) by Newton iteration on the orthonormal Hermite recurrence,
/// starting from the classic asymptotic node guesses.
pub fn gauss_hermite(k: usize) -> Result<QuadratureRule, SpecialError> {
    assert!(
        (1..=MAX_QUADRATURE_ORDER).contains(&k),
        "quadrature order must be in 1..={MAX_QUADRATURE_ORDER}, got {k}"
    );
    const TOL: f64 = 1e-14;
    const MAX_NEWTON: usize = 200;

    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let nf = k as f64;

    // First zeros of Ai(-x), for the edge asymptotics of Hermite zeros.
    const AIRY_ZEROS: [f64; 10] = [
        2.338107410459767,
        4.087_949_444_130_97,
        5.520559828095551,
        6.786708090071759,
        7.944133587120853,
        9.022_650_853_340_98,
        10.040174341558085,
        11.008524303733262,
        11.936015563236262,
        12.828776752865757,
    ];

    // Positive roots in descending order; the negative half is mirrored.
    // Near the spectral edge the zeros follow the Airy asymptotic
    // sqrt(2k+1) - 2^{-1/3} (2k+1)^{-1/6} |a_i|; deeper in the bulk the
    // local spacing follows the semicircle density
    // rho(x) = sqrt(2k+1 - x^2)/pi, stepped from the previous converged
    // root. The same spacing caps the Newton step so an iterate cannot
    // jump to a neighboring root.
    let turning = (2.0 * nf + 1.0).sqrt();
    let edge = 2f64.powf(-1.0 / 3.0) * (2.0 * nf + 1.0).powf(-1.0 / 6.0);
    let spacing = |x: f64| std::f64::consts::PI / (2.0 * nf + 1.0 - x * x).max(2.0).sqrt();
    let mut z = 0.0;
    for i in 0..k / 2 {
        // The Airy expansion is trustworthy only while the zero stays close
        // to the turning point; elsewhere step by the local bulk spacing.
        let airy_ok = i == 0 || (i < AIRY_ZEROS.len() && edge * AIRY_ZEROS[i] < 0.4 * turning);
        z = if airy_ok {
            turning - edge * AIRY_ZEROS[i]
        } else {
            z - spacing(z)
        };
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p, pm) = orthonormal_hermite_pair(k, z);
            // Derivative identity for the orthonormal family:
            // p'_k = sqrt(2k) p_{k-1}.
            let mut dz = p / ((2.0 * nf).sqrt() * pm);
            let cap = 0.75 * spacing(z);
            if dz.abs() > cap {
                dz = cap * dz.signum();
            }
            z -= dz;
            if dz.abs() <= TOL * (1.0 + z.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SpecialError::ConvergenceFailure { order: k, node: i });
        }
        let (_, pm) = orthonormal_hermite_pair(k, z);
        let w = 1.0 / (nf * pm * pm);
        nodes[k - 1 - i] = z;
        nodes[i] = -z;
        weights[k - 1 - i] = w;
        weights[i] = w;
    }
    if k % 2 == 1 {
        // Center node is exactly zero by symmetry.
        let (_, pm) = orthonormal_hermite_pair(k, 0.0);
        nodes[k / 2] = 0.0;
        weights[k / 2] = 1.0 / (nf * pm * pm);
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Orthonormal-Hermite pair (p_k(x), p_{k-1}(x)) for the weight e^{-x^2};
/// p_k = H_k / sqrt(sqrt(pi) 2^k k!). No rescaling needed for k <= 512.
fn orthonormal_hermite_pair(k: usize, x: f64) -> (f64, f64) {
    let mut pm = 0.0;
    let mut p = std::f64::consts::PI.powf(-0.25);
    for j in 0..k {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * p - (jf / (jf + 1.0)).sqrt() * pm;
        pm = p;
        p = next;
    }
    (p, pm)
}
