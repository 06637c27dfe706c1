//! Shared kernels: Gauss–Legendre quadrature, finite differences, and the
//! symmetric tridiagonal eigensolver used by the spectral oracle.

mod fd;
mod quadrature;
mod tridiag;

pub use fd::fd_second_derivative;
pub use quadrature::{gauss_legendre, ClusteredNode, QuadratureRule};
pub use tridiag::{eigen_sym_tridiag, TridiagonalSystem};

/// Richardson extrapolation of two estimates with error `C h^order`.
pub fn richardson(h1: f64, v1: f64, h2: f64, v2: f64, order: i32) -> f64 {
    let (p1, p2) = (h1.powi(order), h2.powi(order));
    (p1 * v2 - p2 * v1) / (p1 - p2)
}
