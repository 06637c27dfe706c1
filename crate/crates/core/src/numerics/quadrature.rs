//! Gauss–Legendre quadrature on `[-1, 1]`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Nodes (strictly increasing, inside `(-1, 1)`) and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// A node of an endpoint-clustered rule. The distances to both endpoints are
/// carried separately because they fall below `f64::EPSILON` near `±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusteredNode {
    pub x: f64,
    pub one_minus_x: f64,
    pub one_plus_x: f64,
    pub weight: f64,
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre rule with `order` nodes.
///
/// Nodes are Legendre roots found by Newton iteration from Chebyshev-like
/// initial guesses; weights are `2 / ((1 - x²) P_n'(x)²)`.
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidInput("quadrature order must be >= 1".into()));
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        let mut dp = 0.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::ConvergenceFailure(format!(
                "Newton iteration for Legendre root {i} of order {n}"
            )));
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_{-1}^{1} f(x) dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// `∫_{lo}^{hi} f(x) dx` by affine mapping.
    pub fn integrate_on(&self, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self.integrate(|t| f(mid + half * t))
    }

    /// The rule pushed twice through `φ(t) = t (3 - t²) / 2`, which has
    /// `φ'(±1) = 0`.
    ///
    /// Endpoint factors `(1 - x)^a` become `(1 - t)^(4a+3)`-type in the new
    /// variable, so Gauss–Legendre regains fast convergence for non-integer
    /// Jacobi-type weights, including exponents close to -1.
    pub fn endpoint_clustered(&self) -> Vec<ClusteredNode> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| {
                let inner = smooth(t, 1.0 - t, 1.0 + t);
                let outer = smooth(inner.0, inner.1, inner.2);
                ClusteredNode {
                    x: outer.0,
                    one_minus_x: outer.1,
                    one_plus_x: outer.2,
                    weight: w * inner.3 * outer.3,
                }
            })
            .collect()
    }
}

/// `(φ(t), 1 - φ(t), 1 + φ(t), φ'(t))` from `t` and its endpoint gaps.
fn smooth(t: f64, one_minus: f64, one_plus: f64) -> (f64, f64, f64, f64) {
    (
        0.5 * t * (3.0 - t * t),
        0.5 * one_minus * one_minus * (2.0 + t),
        0.5 * one_plus * one_plus * (2.0 - t),
        1.5 * one_minus * one_plus,
    )
}
