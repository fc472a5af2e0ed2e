//! Numerical laboratory for the harmonic oscillator with symmetrized
//! position–momentum coupling, H = p²/2m + ½mω²x² + (μ/2)(xp + px).
//!
//! Three independent computational routes cover the same physics:
//!
//! * [`analytic`] — closed forms for the spectrum, eigenfunctions,
//!   uncertainty products, and coherent-state dynamics;
//! * [`fock`] — truncated ladder-operator matrices with exact diagonal
//!   time evolution;
//! * [`grid`] — position-space finite differences, a Hermitian
//!   tridiagonal eigensolver, and Crank–Nicolson propagation.
//!
//! The [`harness`] module cross-validates the routes against each other and
//! emits a machine-readable report; [`special`] holds the Hermite/quadrature
//! kernels everything rests on.

pub mod analytic;
pub mod fock;
pub mod grid;
pub mod harness;
pub mod params;
pub mod special;

pub use analytic::{CoherentParams, MomentSet, PhasePoint};
pub use fock::{FockSet, OperatorMatrix, StateVector};
pub use grid::{GridEigenResult, GridSpec};
pub use harness::{CheckResult, Report, Route, VerifyConfig};
pub use params::{DerivedQuantities, OscillatorParams, ParamError};
pub use special::QuadratureRule;
