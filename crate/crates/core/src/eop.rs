//! Exceptional X_m Jacobi polynomials `P̂_n^(a,b,m)`, `n >= m`.
//!
//! The polynomials are evaluated through their bilinear representation in
//! classical Jacobi polynomials (with `j = n - m`):
//!
//! ```text
//! P̂_n = (-1)^m [ (a+b+j+1)/(2(a+j+1)) (x-1) P_m^(-a-1,b-1) P_{j-1}^(a+2,b)
//!              + (a-m+1)/(a+j+1)            P_m^(-a-2,b)   P_j^(a+1,b-1) ]
//! ```
//!
//! They are orthogonal on `[-1, 1]` with weight
//! `(1-x)^a (1+x)^b / [P_m^(-a-1,b-1)(x)]²` whenever the denominator has no
//! zero on the interval, which is what [`admissible`] decides.

use crate::error::{Error, Result};
use crate::jacobi::{jacobi, jacobi_of, near_integer, INTEGER_TOL};
use crate::jet::Jet;
use crate::numerics::gauss_legendre;
use crate::scalar::Scalar;

/// Denominators smaller than this in modulus are treated as zeros.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Default Gauss–Legendre order for inner products (degrees up to ~20).
pub const DEFAULT_QUAD_ORDER: usize = 200;

/// Parameters and degree of an exceptional polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EopIndex {
    pub a: f64,
    pub b: f64,
    pub m: u32,
    pub n: u32,
}

impl EopIndex {
    pub fn new(a: f64, b: f64, m: u32, n: u32) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!(
                "parameters must be finite (a = {a}, b = {b})"
            )));
        }
        if n < m {
            return Err(Error::InvalidInput(format!(
                "degree n = {n} is below the codimension m = {m}"
            )));
        }
        Ok(Self { a, b, m, n })
    }

    /// `j = n - m`.
    pub fn shift(&self) -> u32 {
        self.n - self.m
    }

    /// Same parameters, different degree.
    pub fn with_degree(&self, n: u32) -> Result<Self> {
        Self::new(self.a, self.b, self.m, n)
    }
}

/// `Q₁(x)` and `R₁(x)` of `(1-x²) y'' + Q₁ y' + R₁ y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCoefficients {
    pub q1: f64,
    pub r1: f64,
}

fn in_low_range(v: f64, m: u32) -> bool {
    near_integer(v).is_some_and(|k| (0..i64::from(m)).contains(&k))
}

fn signum_tol(v: f64) -> i32 {
    if v.abs() <= INTEGER_TOL {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Whether `P_m^(-a-1,b-1)` is zero-free on `[-1, 1]`:
///
/// * `b ≠ 0` and neither `a` nor `a-b-m+1` lies in `{0, …, m-1}`;
/// * `a > m-2` and `sgn(a-m+1) = sgn(b)`.
///
/// "Is an integer" uses the absolute tolerance [`INTEGER_TOL`]. `m = 0` is
/// always admissible.
pub fn admissible(a: f64, b: f64, m: u32) -> bool {
    if m == 0 {
        return true;
    }
    let mf = f64::from(m);
    signum_tol(b) != 0
        && !in_low_range(a, m)
        && !in_low_range(a - b - mf + 1.0, m)
        && a > mf - 2.0
        && signum_tol(a - mf + 1.0) == signum_tol(b)
}

/// The weight denominator `P_m^(-a-1,b-1)(x)`.
pub fn weight_denominator<T: Scalar>(a: f64, b: f64, m: u32, x: T) -> T {
    jacobi(i64::from(m), -a - 1.0, b - 1.0, x)
}

/// Whether the weight denominator changes sign on a uniform grid of
/// `points` nodes over `[-1, 1]`.
pub fn denominator_sign_change(a: f64, b: f64, m: u32, points: usize) -> bool {
    let mut prev: Option<f64> = None;
    for i in 0..points {
        let x = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        let v = weight_denominator(a, b, m, x);
        if v == 0.0 {
            return true;
        }
        if let Some(p) = prev {
            if (p < 0.0) != (v < 0.0) {
                return true;
            }
        }
        prev = Some(v);
    }
    false
}

fn check_denominator<T: Scalar>(value: T, x: T, what: &str) -> Result<()> {
    if value.modulus() < SINGULAR_TOL {
        let xr = x.to_complex();
        return Err(Error::SingularPoint {
            x: xr.re,
            what: format!("{what} vanishes at {xr}"),
        });
    }
    Ok(())
}

fn representation_coefficients(idx: &EopIndex) -> Result<(f64, f64)> {
    let j = f64::from(idx.shift());
    let denom = idx.a + j + 1.0;
    if denom.abs() <= INTEGER_TOL {
        return Err(Error::DegenerateParameter(format!(
            "a + j + 1 = 0 for a = {}, j = {}",
            idx.a,
            idx.shift()
        )));
    }
    let c1 = (idx.a + idx.b + j + 1.0) / (2.0 * denom);
    let c2 = (idx.a - f64::from(idx.m) + 1.0) / denom;
    Ok((c1, c2))
}

/// `P̂_n^(a,b,m)(g(t))` as a jet in `t`, given the jet of the argument `g`.
pub fn eop_of<T: Scalar>(idx: &EopIndex, g: Jet<T>) -> Result<Jet<T>> {
    let (a, b, m) = (idx.a, idx.b, i64::from(idx.m));
    if m == 0 {
        return Ok(jacobi_of(i64::from(idx.n), a, b, g));
    }
    let (c1, c2) = representation_coefficients(idx)?;
    let j = i64::from(idx.shift());
    let first = (g + (-1.0)) * jacobi_of(m, -a - 1.0, b - 1.0, g) * jacobi_of(j - 1, a + 2.0, b, g);
    let second = jacobi_of(m, -a - 2.0, b, g) * jacobi_of(j, a + 1.0, b - 1.0, g);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok((first * c1 + second * c2) * sign)
}

/// `P̂_n^(a,b,m)(x)`; for `m = 0` this is the classical `P_n^(a,b)(x)`.
pub fn eop_eval<T: Scalar>(idx: &EopIndex, x: T) -> Result<T> {
    if idx.m == 0 {
        return Ok(jacobi(i64::from(idx.n), idx.a, idx.b, x));
    }
    let (a, b, m) = (idx.a, idx.b, i64::from(idx.m));
    let (c1, c2) = representation_coefficients(idx)?;
    let j = i64::from(idx.shift());
    let first = (x - 1.0) * jacobi(m, -a - 1.0, b - 1.0, x) * jacobi(j - 1, a + 2.0, b, x);
    let second = jacobi(m, -a - 2.0, b, x) * jacobi(j, a + 1.0, b - 1.0, x);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok((first * c1 + second * c2) * sign)
}

/// Value and first two derivatives of `P̂_n^(a,b,m)` at `x`.
pub fn eop_jet<T: Scalar>(idx: &EopIndex, x: T) -> Result<Jet<T>> {
    eop_of(idx, Jet::variable(x))
}

pub fn ode_coefficients(idx: &EopIndex, x: f64) -> Result<OdeCoefficients> {
    let (a, b) = (idx.a, idx.b);
    let (m, n) = (f64::from(idx.m), f64::from(idx.n));
    let den = weight_denominator(a, b, idx.m, x);
    check_denominator(den, x, "P_m^(-a-1,b-1)")?;
    let ratio = jacobi(i64::from(idx.m) - 1, -a, b, x) / den;
    let shift = a - b - m + 1.0;
    let q1 = shift * (1.0 - x * x) * ratio - (a + 1.0) * (1.0 + x) + (b + 1.0) * (1.0 - x);
    let r1 = b * shift * (1.0 - x) * ratio + n * n + n * (a + b - 2.0 * m + 1.0) - 2.0 * b * m;
    Ok(OdeCoefficients { q1, r1 })
}

/// `|(1-x²) y'' + Q₁ y' + R₁ y|` for an arbitrary jet `y` at `x`.
pub fn ode_residual_of(idx: &EopIndex, x: f64, y: Jet<f64>) -> Result<f64> {
    let c = ode_coefficients(idx, x)?;
    Ok(((1.0 - x * x) * y.d2 + c.q1 * y.d1 + c.r1 * y.value).abs())
}

/// ODE residual of `P̂_n^(a,b,m)` itself (absolute; derivatives are exact).
pub fn eop_ode_residual(idx: &EopIndex, x: f64) -> Result<f64> {
    if x.abs() > 1.0 {
        return Err(Error::OutOfDomain {
            x,
            lo: -1.0,
            hi: 1.0,
        });
    }
    let y = eop_jet(idx, x)?;
    ode_residual_of(idx, x, y)
}

/// ODE residual divided by the sum of the magnitudes of the individual terms
/// of `(1-x²) y''`, `Q₁ y'` and `R₁ y`, so cancellation inside `Q₁` or `R₁`
/// does not inflate it.
pub fn eop_ode_residual_relative(idx: &EopIndex, x: f64) -> Result<f64> {
    if x.abs() > 1.0 {
        return Err(Error::OutOfDomain {
            x,
            lo: -1.0,
            hi: 1.0,
        });
    }
    let y = eop_jet(idx, x)?;
    let (a, b) = (idx.a, idx.b);
    let (m, n) = (f64::from(idx.m), f64::from(idx.n));
    let den = weight_denominator(a, b, idx.m, x);
    check_denominator(den, x, "P_m^(-a-1,b-1)")?;
    let ratio = jacobi(i64::from(idx.m) - 1, -a, b, x) / den;
    let shift = a - b - m + 1.0;
    let q = [
        shift * (1.0 - x * x) * ratio,
        -(a + 1.0) * (1.0 + x),
        (b + 1.0) * (1.0 - x),
    ];
    let r = [
        b * shift * (1.0 - x) * ratio,
        n * n + n * (a + b - 2.0 * m + 1.0),
        -2.0 * b * m,
    ];
    let res = (1.0 - x * x) * y.d2 + q.iter().sum::<f64>() * y.d1 + r.iter().sum::<f64>() * y.value;
    let scale = (1.0 - x * x) * y.d2.abs()
        + q.iter().map(|t| t.abs()).sum::<f64>() * y.d1.abs()
        + r.iter().map(|t| t.abs()).sum::<f64>() * y.value.abs();
    Ok(if scale > 0.0 {
        res.abs() / scale
    } else {
        res.abs()
    })
}

fn weight_from_gaps(a: f64, b: f64, m: u32, x: f64, one_minus: f64, one_plus: f64) -> Result<f64> {
    let den = weight_denominator(a, b, m, x);
    check_denominator(den, x, "P_m^(-a-1,b-1)")?;
    Ok(one_minus.powf(a) * one_plus.powf(b) / (den * den))
}

/// Orthogonality weight `(1-x)^a (1+x)^b / [P_m^(-a-1,b-1)(x)]²` on `|x| < 1`.
pub fn eop_weight(a: f64, b: f64, m: u32, x: f64) -> Result<f64> {
    if x.abs() >= 1.0 {
        return Err(Error::OutOfDomain {
            x,
            lo: -1.0,
            hi: 1.0,
        });
    }
    if !admissible(a, b, m) {
        return Err(Error::Inadmissible { a, b, m });
    }
    weight_from_gaps(a, b, m, x, 1.0 - x, 1.0 + x)
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`, rejecting poles.
fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if matches!(near_integer(x), Some(k) if k <= 0) {
        return Err(Error::DegenerateParameter(format!("Gamma pole at {x}")));
    }
    let (lg, sign) = libm::lgamma_r(x);
    Ok((lg, f64::from(sign)))
}

fn nonzero(v: f64, what: &str) -> Result<f64> {
    if v.abs() <= INTEGER_TOL {
        return Err(Error::DegenerateParameter(format!("{what} vanishes")));
    }
    Ok(v)
}

/// Closed-form `∫ W P̂_n² dx`:
///
/// ```text
/// 2^(a+b+1) (n+b)(n-2m+a+1) Γ(j+a+2) Γ(j+b)
/// -----------------------------------------------------,   j = n - m
/// (2j+a+b+1) (j+a+1)² j! Γ(j+a+b+1)
/// ```
///
/// For `m = 0` the equivalent classical form with `Γ(n+b+1)` is used so that
/// `b = 0` carries no removable pole.
pub fn eop_norm_sq(idx: &EopIndex) -> Result<f64> {
    let (a, b) = (idx.a, idx.b);
    let (m, n) = (f64::from(idx.m), f64::from(idx.n));
    let j = n - m;
    let ln_fact_j = libm::lgamma(j + 1.0);
    let mut sign = 1.0;
    let mut ln = (a + b + 1.0) * std::f64::consts::LN_2 - ln_fact_j;
    let mut mul = |v: f64| {
        sign *= v.signum();
        ln += v.abs().ln();
    };
    let lead = nonzero(2.0 * j + a + b + 1.0, "2j+a+b+1")?;
    mul(1.0 / lead);
    let mut terms: Vec<(f64, f64)> = Vec::new();
    if idx.m == 0 {
        terms.push(ln_gamma_signed(n + a + 1.0)?);
        terms.push(ln_gamma_signed(n + b + 1.0)?);
    } else {
        mul(nonzero(n + b, "n+b")?);
        mul(nonzero(n - 2.0 * m + a + 1.0, "n-2m+a+1")?);
        let t = nonzero(j + a + 1.0, "j+a+1")?;
        mul(1.0 / (t * t));
        terms.push(ln_gamma_signed(j + a + 2.0)?);
        terms.push(ln_gamma_signed(j + b)?);
    }
    let (lg_den, s_den) = ln_gamma_signed(j + a + b + 1.0)?;
    for (lg, s) in terms {
        sign *= s;
        ln += lg;
    }
    sign *= s_den;
    ln -= lg_den;
    Ok(sign * ln.exp())
}

/// Gauss–Legendre estimate of `∫_{-1}^{1} W P̂_{n₁} P̂_{n₂} dx`.
///
/// The rule is applied in the endpoint-clustered variable of
/// [`crate::numerics::QuadratureRule::endpoint_clustered`], so fractional
/// endpoint powers of the weight do not limit the accuracy.
pub fn eop_inner_product(i1: &EopIndex, i2: &EopIndex, quad_order: usize) -> Result<f64> {
    if i1.a != i2.a || i1.b != i2.b || i1.m != i2.m {
        return Err(Error::InvalidInput(
            "inner product needs both polynomials from the same (a, b, m) family".into(),
        ));
    }
    let (a, b, m) = (i1.a, i1.b, i1.m);
    if !admissible(a, b, m) {
        return Err(Error::Inadmissible { a, b, m });
    }
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::InvalidInput(format!(
            "quadrature needs an integrable weight (a, b > -1), got a = {a}, b = {b}"
        )));
    }
    let rule = gauss_legendre(quad_order)?;
    let mut acc = 0.0;
    for node in rule.endpoint_clustered() {
        let w = weight_from_gaps(a, b, m, node.x, node.one_minus_x, node.one_plus_x)?;
        let p1 = eop_eval(i1, node.x)?;
        let p2 = if i2.n == i1.n {
            p1
        } else {
            eop_eval(i2, node.x)?
        };
        acc += node.weight * w * p1 * p2;
    }
    Ok(acc)
}
