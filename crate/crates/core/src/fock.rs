//! Truncated Fock-space route: dense matrix representations of the ladder
//! operators, position, momentum, and the Hamiltonian, plus coherent vectors,
//! diagonal time evolution, and an expectation/variance engine.
//!
//! The Fock basis diagonalizes the Hamiltonian, so time evolution is exact
//! phase multiplication; truncation only corrupts the last rows/columns of
//! operator products (the usual finite-ladder corner defect), which is why
//! block invariants are stated on leading sub-blocks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::analytic::CoherentParams;
use crate::params::{DerivedQuantities, OscillatorParams};
use crate::special::log_factorial;

/// Truncated coherent tail mass must stay below this before renormalization.
const TAIL_MASS_LIMIT: f64 = 1e-16;

#[derive(Debug, Error, PartialEq)]
pub enum FockError {
    #[error("Fock dimension {dim} too small, need at least {min}")]
    DimensionTooSmall { dim: usize, min: usize },
    #[error(
        "dimension {dim} cannot hold a coherent state with |alpha| = {magnitude} \
         (need >= {required} for tail mass < 1e-16)"
    )]
    TruncationInsufficient {
        magnitude: f64,
        dim: usize,
        required: usize,
    },
    #[error("state dimension {state} does not match operator dimension {operator}")]
    DimensionMismatch { state: usize, operator: usize },
    #[error("cannot normalize a zero state vector")]
    ZeroNorm,
}

/// Dense complex operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "operator matrices are square");
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    /// Largest entry modulus.
    pub fn max_entry(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |A - A^dagger| over all entries; zero for Hermitian operators.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let defect = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                worst = worst.max(defect);
            }
        }
        worst
    }
}

/// Normalized coefficient vector in the Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    v: DVector<Complex64>,
}

impl StateVector {
    /// Accepts coefficients already normalized to 1e-10.
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self, FockError> {
        let v = DVector::from_vec(coefficients);
        let norm = v.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(FockError::ZeroNorm);
        }
        Ok(Self { v })
    }

    /// Rescales arbitrary coefficients onto the unit sphere.
    pub fn normalized(coefficients: Vec<Complex64>) -> Result<Self, FockError> {
        let mut v = DVector::from_vec(coefficients);
        let norm = v.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(FockError::ZeroNorm);
        }
        v /= Complex64::from(norm);
        Ok(Self { v })
    }

    /// Basis state |n> in a space of the given dimension.
    pub fn basis(n: usize, dim: usize) -> Self {
        assert!(n < dim, "basis index {n} out of range for dim {dim}");
        let mut v = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        v[n] = Complex64::new(1.0, 0.0);
        Self { v }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn coefficients(&self) -> &DVector<Complex64> {
        &self.v
    }

    pub fn norm(&self) -> f64 {
        self.v.norm()
    }
}

/// The operator family used by every Fock-route computation.
#[derive(Debug, Clone)]
pub struct FockSet {
    pub a: OperatorMatrix,
    pub adag: OperatorMatrix,
    pub x: OperatorMatrix,
    pub p: OperatorMatrix,
    pub h: OperatorMatrix,
    dim: usize,
}

impl FockSet {
    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Builds a, a^dagger, x, p and the Hamiltonian on a dim-dimensional space.
///
/// x = sqrt(hbar / 2 m big_omega) (a + a^dagger);
/// p = -i sqrt(m hbar / 2 big_omega)
///     [big_omega (a - a^dagger) - i mu (a + a^dagger)];
/// h is assembled from these matrices, including the symmetrized
/// (mu/2)(xp + px) coupling, not written down diagonally.
pub fn build_fock_set(params: &OscillatorParams, dim: usize) -> Result<FockSet, FockError> {
    if dim < 4 {
        return Err(FockError::DimensionTooSmall { dim, min: 4 });
    }
    let d = params.derived();
    let zero = Complex64::new(0.0, 0.0);
    let mut a = DMatrix::from_element(dim, dim, zero);
    for n in 0..dim - 1 {
        a[(n, n + 1)] = Complex64::new((n as f64 + 1.0).sqrt(), 0.0);
    }
    let adag = a.adjoint();

    let x_scale = (params.hbar() / (2.0 * params.mass() * d.big_omega)).sqrt();
    let p_scale = (params.mass() * params.hbar() / (2.0 * d.big_omega)).sqrt();
    let sum = &a + &adag;
    let diff = &a - &adag;
    let x = &sum * Complex64::from(x_scale);
    let p = (&diff * Complex64::from(d.big_omega) - &sum * Complex64::new(0.0, params.mu()))
        * Complex64::new(0.0, -p_scale);

    let half_m_w2 = Complex64::from(0.5 * params.mass() * params.omega() * params.omega());
    let inv_2m = Complex64::from(1.0 / (2.0 * params.mass()));
    let half_mu = Complex64::from(0.5 * params.mu());
    let h = &p * &p * inv_2m + &x * &x * half_m_w2 + (&x * &p + &p * &x) * half_mu;

    Ok(FockSet {
        a: OperatorMatrix::from_matrix(a),
        adag: OperatorMatrix::from_matrix(adag),
        x: OperatorMatrix::from_matrix(x),
        p: OperatorMatrix::from_matrix(p),
        h: OperatorMatrix::from_matrix(h),
        dim,
    })
}

/// Smallest dimension that keeps the truncated coherent tail mass below
/// 1e-16 (Poisson tail bound).
pub fn coherent_dim(magnitude: f64) -> usize {
    let n = magnitude * magnitude;
    (n + 10.0 * (n + 1.0).sqrt() + 20.0).ceil() as usize
}

fn coherent_tail_ok(magnitude: f64, dim: usize) -> bool {
    if magnitude == 0.0 {
        return true;
    }
    // ln of e^{-|a|^2} |a|^{2 dim} / dim!
    let ln_tail = -magnitude * magnitude + 2.0 * dim as f64 * magnitude.ln() - log_factorial(dim);
    ln_tail < TAIL_MASS_LIMIT.ln()
}

/// Coherent coefficient vector c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!),
/// truncated to `dim` entries and renormalized.
pub fn coherent_vector(a: &CoherentParams, dim: usize) -> Result<StateVector, FockError> {
    if dim == 0 {
        return Err(FockError::DimensionTooSmall { dim, min: 1 });
    }
    let mag = a.magnitude();
    if !coherent_tail_ok(mag, dim) {
        return Err(FockError::TruncationInsufficient {
            magnitude: mag,
            dim,
            required: coherent_dim(mag),
        });
    }
    let alpha = a.as_complex();
    let mut coeffs = Vec::with_capacity(dim);
    let mut c = Complex64::from((-0.5 * mag * mag).exp());
    coeffs.push(c);
    for n in 0..dim - 1 {
        c *= alpha / Complex64::from((n as f64 + 1.0).sqrt());
        coeffs.push(c);
    }
    StateVector::normalized(coeffs)
}

/// Diagonal time evolution c_n -> c_n e^{-i E_n t / hbar} with
/// E_n = hbar big_omega (n + 1/2); the norm is untouched.
pub fn evolve(s: &StateVector, d: &DerivedQuantities, t: f64) -> StateVector {
    let coeffs = s
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::cis(-d.big_omega * t * (n as f64 + 0.5)))
        .collect::<Vec<_>>();
    StateVector {
        v: DVector::from_vec(coeffs),
    }
}

/// <state| op |state>. The imaginary part is a numerical residue for
/// Hermitian operators.
pub fn expectation(s: &StateVector, op: &OperatorMatrix) -> Result<Complex64, FockError> {
    if s.dim() != op.dim() {
        return Err(FockError::DimensionMismatch {
            state: s.dim(),
            operator: op.dim(),
        });
    }
    let w = op.matrix() * s.coefficients();
    Ok(s.coefficients().dotc(&w))
}

/// Variance <op^2> - <op>^2 of a Hermitian operator; tiny negative rounding
/// residues are clamped to zero.
pub fn variance(s: &StateVector, op: &OperatorMatrix) -> Result<f64, FockError> {
    if s.dim() != op.dim() {
        return Err(FockError::DimensionMismatch {
            state: s.dim(),
            operator: op.dim(),
        });
    }
    let w = op.matrix() * s.coefficients();
    let mean = s.coefficients().dotc(&w).re;
    let second = w.dotc(&w).re; // <op v, op v> = <op^2> for Hermitian op
    let var = second - mean * mean;
    assert!(
        var > -1e-12 * second.max(1.0),
        "variance {var} is negative beyond rounding tolerance"
    );
    Ok(var.max(0.0))
}

/// Delta x * Delta p in the given state.
pub fn product_of_uncertainties(s: &StateVector, fs: &FockSet) -> Result<f64, FockError> {
    let vx = variance(s, &fs.x)?;
    let vp = variance(s, &fs.p)?;
    Ok((vx * vp).sqrt())
}
