//! Exceptional X_m Jacobi polynomials and the rationally extended
//! trigonometric and hyperbolic Scarf potentials whose bound states they
//! describe.
//!
//! Modules, bottom-up:
//!
//! * [`jacobi`]: classical Jacobi polynomials for arbitrary real parameters.
//! * [`eop`]: exceptional X_m Jacobi polynomials, weight, norms, ODE residual.
//! * [`potentials`]: the three potential families with exact spectra and
//!   wavefunctions.
//! * [`susy`]: superpotential, partner potentials, shape invariance.
//! * [`numerics`]: quadrature, finite differences, tridiagonal eigensolver.
//! * [`oracle`]: finite-difference Schrödinger spectra and Hamiltonian
//!   residuals that check the closed forms independently.
//! * [`suites`]: named verification batteries producing [`report::VerificationReport`]s.

pub mod eop;
pub mod error;
pub mod jacobi;
pub mod jet;
pub mod numerics;
pub mod oracle;
pub mod potentials;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod susy;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex argument of the polynomial and potential evaluators.
pub type ComplexPoint = Complex64;
