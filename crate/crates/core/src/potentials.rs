//! Rationally extended Scarf potentials and their exact bound states.
//!
//! All three families share one dimensionless form. With `s = sin θ`,
//! `c² = cos² θ`, `A = a-b-m+1` and `r = P_{m-1}^(-a,b)(s) / P_m^(-a-1,b-1)(s)`:
//!
//! ```text
//! F(θ) = (2a²+2b²-1)/4 · 1/c² - (b²-a²)/2 · s/c² - 2mA
//!        - A [a+b+(a-b+1)s] r + A² c²/2 · r²
//! ```
//!
//! * trigonometric `V^(m)(x) = k² F(kx)` on `|x| < π/2k`;
//! * imaginary-shifted `Ṽ^(m)(x) = k² F(kx + iε)` on the real line;
//! * hyperbolic `U^(m)(x) = -k² F(ikx)` on the real line, i.e. the same form
//!   with `s = i sinh kx` and `c² = cosh² kx`.
//!
//! Energies are `±(k²/4)(2n-2m+a+b+1)²` for `n >= m`, and the bound states are
//! `(1-s)^(a/2+1/4) (1+s)^(b/2+1/4) / P_m^(-a-1,b-1)(s) · P̂_n^(a,b,m)(s)`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use serde::Serialize;

use crate::eop::{admissible, eop_eval, eop_norm_sq, weight_denominator, EopIndex, SINGULAR_TOL};
use crate::error::{Error, Result};
use crate::jacobi::{jacobi, near_integer};
use crate::scalar::Scalar;

/// Minimum distance (in x) kept from the edges of the trigonometric well.
pub const ENDPOINT_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    TrigScarf,
    /// Coordinate shifted by the imaginary constant `iε/k`.
    ShiftedTrigScarf {
        eps: f64,
    },
    HyperbolicScarf,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::TrigScarf => "trig",
            Family::ShiftedTrigScarf { .. } => "shifted",
            Family::HyperbolicScarf => "hyper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSpec {
    #[serde(flatten)]
    family: Family,
    m: u32,
    a: f64,
    b: f64,
    k: f64,
}

impl PotentialSpec {
    /// Validates `k > 0`, finite parameters and, for the trigonometric family
    /// with `m >= 1`, admissibility (no singularity inside the well).
    pub fn new(family: Family, m: u32, a: f64, b: f64, k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidInput(format!("k must be positive, got {k}")));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!(
                "parameters must be finite (a = {a}, b = {b})"
            )));
        }
        match family {
            Family::TrigScarf if !admissible(a, b, m) => {
                return Err(Error::Inadmissible { a, b, m });
            }
            Family::ShiftedTrigScarf { eps } if !eps.is_finite() => {
                return Err(Error::InvalidInput(format!(
                    "shift must be finite, got {eps}"
                )));
            }
            _ => {}
        }
        Ok(Self { family, m, a, b, k })
    }

    pub fn trig(m: u32, a: f64, b: f64, k: f64) -> Result<Self> {
        Self::new(Family::TrigScarf, m, a, b, k)
    }

    pub fn shifted(m: u32, a: f64, b: f64, k: f64, eps: f64) -> Result<Self> {
        Self::new(Family::ShiftedTrigScarf { eps }, m, a, b, k)
    }

    pub fn hyperbolic(m: u32, a: f64, b: f64, k: f64) -> Result<Self> {
        Self::new(Family::HyperbolicScarf, m, a, b, k)
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Half-width `π/2k` of the trigonometric well.
    pub fn half_width(&self) -> f64 {
        FRAC_PI_2 / self.k
    }

    /// Open domain of the potential.
    pub fn domain(&self) -> (f64, f64) {
        match self.family {
            Family::TrigScarf => (-self.half_width(), self.half_width()),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Domain on which the bound-state formula is used. For the shifted family
    /// this is the cell `|x| < π/2k` on which `1 ∓ sin(kx+iε)` stays off the
    /// principal branch cut.
    pub fn wavefunction_domain(&self) -> (f64, f64) {
        match self.family {
            Family::HyperbolicScarf => (f64::NEG_INFINITY, f64::INFINITY),
            _ => (-self.half_width(), self.half_width()),
        }
    }

    /// `(k²/4)(a+b+1)²`, the energy of the lowest level `n = m` in absolute value.
    pub fn factorization_energy(&self) -> f64 {
        let s = self.a + self.b + 1.0;
        0.25 * self.k * self.k * s * s
    }
}

fn check_inside(x: f64, (lo, hi): (f64, f64)) -> Result<()> {
    let guard = if lo.is_finite() { ENDPOINT_GUARD } else { 0.0 };
    if !x.is_finite() || x <= lo + guard || x >= hi - guard {
        return Err(Error::OutOfDomain { x, lo, hi });
    }
    Ok(())
}

fn singular_at(x: f64, what: &str) -> Error {
    Error::SingularPoint {
        x,
        what: what.to_string(),
    }
}

/// `P_{m-1}^(-a,b)(s) / P_m^(-a-1,b-1)(s)`; zero for `m = 0`.
fn extension_ratio<T: Scalar>(m: u32, a: f64, b: f64, s: T, x: f64) -> Result<T> {
    if m == 0 {
        return Ok(T::zero());
    }
    let den = weight_denominator(a, b, m, s);
    if den.modulus() < SINGULAR_TOL {
        return Err(singular_at(x, "P_m^(-a-1,b-1) vanishes"));
    }
    Ok(jacobi(i64::from(m) - 1, -a, b, s) / den)
}

/// The dimensionless form `F` in terms of `s = sin θ` and `c² = cos² θ`.
pub(crate) fn scarf_form<T: Scalar>(m: u32, a: f64, b: f64, s: T, c2: T, x: f64) -> Result<T> {
    if c2.modulus() < SINGULAR_TOL {
        return Err(singular_at(x, "cos(kx) vanishes"));
    }
    let shift = a - b - f64::from(m) + 1.0;
    let mut v = (T::one() / c2) * ((2.0 * a * a + 2.0 * b * b - 1.0) / 4.0)
        - (s / c2) * ((b * b - a * a) / 2.0);
    if m > 0 {
        let r = extension_ratio(m, a, b, s, x)?;
        v = v - 2.0 * f64::from(m) * shift - (s * (a - b + 1.0) + (a + b)) * r * shift
            + c2 * r * r * (shift * shift / 2.0);
    }
    Ok(v)
}

/// Trigonometric `V^(m)(x)` without the admissibility check on `(a, b)`.
/// Used for parameter-shifted partners whose admissibility is not implied.
pub fn trig_potential(m: u32, a: f64, b: f64, k: f64, x: f64) -> Result<f64> {
    let theta = k * x;
    let (s, c) = theta.sin_cos();
    Ok(k * k * scarf_form(m, a, b, s, c * c, x)?)
}

/// Trigonometric form continued to a complex coordinate `z`: `k² F(kz)`.
pub fn trig_potential_continued(m: u32, a: f64, b: f64, k: f64, z: Complex64) -> Result<Complex64> {
    let theta = z * k;
    let c = theta.cos();
    Ok(scarf_form(m, a, b, theta.sin(), c * c, z.re)? * (k * k))
}

/// Potential of any family at a real point.
pub fn potential_value(spec: &PotentialSpec, x: f64) -> Result<Complex64> {
    let (m, a, b, k) = (spec.m, spec.a, spec.b, spec.k);
    match spec.family {
        Family::TrigScarf => {
            check_inside(x, spec.domain())?;
            Ok(Complex64::new(trig_potential(m, a, b, k, x)?, 0.0))
        }
        Family::ShiftedTrigScarf { eps } => {
            if !x.is_finite() {
                return Err(Error::OutOfDomain {
                    x,
                    lo: f64::NEG_INFINITY,
                    hi: f64::INFINITY,
                });
            }
            let theta = Complex64::new(k * x, eps);
            let c = theta.cos();
            Ok(scarf_form(m, a, b, theta.sin(), c * c, x)? * (k * k))
        }
        Family::HyperbolicScarf => {
            if !x.is_finite() {
                return Err(Error::OutOfDomain {
                    x,
                    lo: f64::NEG_INFINITY,
                    hi: f64::INFINITY,
                });
            }
            let s = Complex64::new(0.0, (k * x).sinh());
            let ch = (k * x).cosh();
            Ok(scarf_form(m, a, b, s, Complex64::new(ch * ch, 0.0), x)? * (-k * k))
        }
    }
}

/// Number of integers `n` with `m <= n < m - (a+b+1)/2`.
pub fn hyperbolic_bound_count(spec: &PotentialSpec) -> Result<u32> {
    if spec.family != Family::HyperbolicScarf {
        return Err(Error::InvalidInput(
            "bound count only applies to the hyperbolic family".into(),
        ));
    }
    Ok(bound_count_for(spec.a + spec.b + 1.0))
}

fn bound_count_for(sum: f64) -> u32 {
    let limit = -sum / 2.0;
    if limit <= 0.0 {
        return 0;
    }
    match near_integer(limit) {
        Some(k) => k as u32,
        None => limit.ceil() as u32,
    }
}

fn check_level(spec: &PotentialSpec, n: u32) -> Result<()> {
    if n < spec.m {
        return Err(Error::NoSuchBoundState {
            n,
            reason: format!("levels start at n = m = {}", spec.m),
        });
    }
    if spec.family == Family::HyperbolicScarf {
        let count = bound_count_for(spec.a + spec.b + 1.0);
        if n - spec.m >= count {
            return Err(Error::NoSuchBoundState {
                n,
                reason: format!(
                    "hyperbolic levels need n < m - (a+b+1)/2 = {}",
                    f64::from(spec.m) - (spec.a + spec.b + 1.0) / 2.0
                ),
            });
        }
    }
    Ok(())
}

/// Exact bound-state energy `E_n^(m)`.
pub fn energy(spec: &PotentialSpec, n: u32) -> Result<f64> {
    check_level(spec, n)?;
    let q = 2.0 * f64::from(n - spec.m) + spec.a + spec.b + 1.0;
    let e = 0.25 * spec.k * spec.k * q * q;
    Ok(match spec.family {
        Family::HyperbolicScarf => -e,
        _ => e,
    })
}

/// An exact eigenpair of one of the families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub spec: PotentialSpec,
    pub n: u32,
    pub energy: f64,
    /// `N_n^(m)`; 1 for the hyperbolic family and for shifted instances whose
    /// real-axis counterpart is inadmissible. Those states are left unnormalized.
    pub norm_const: f64,
    index: EopIndex,
}

pub fn bound_state(spec: &PotentialSpec, n: u32) -> Result<BoundState> {
    let energy = energy(spec, n)?;
    let index = EopIndex::new(spec.a, spec.b, spec.m, n)?;
    let norm_const = match spec.family {
        Family::HyperbolicScarf => 1.0,
        // The interval norm only exists when the real-axis instance is admissible.
        Family::ShiftedTrigScarf { .. } => match eop_norm_sq(&index) {
            Ok(norm) if norm > 0.0 && norm.is_finite() && admissible(spec.a, spec.b, spec.m) => {
                (spec.k / norm).sqrt()
            }
            _ => 1.0,
        },
        Family::TrigScarf => {
            let norm = eop_norm_sq(&index)?;
            if norm.is_nan() || norm <= 0.0 {
                return Err(Error::DegenerateParameter(format!(
                    "polynomial norm {norm} is not positive"
                )));
            }
            (spec.k / norm).sqrt()
        }
    };
    Ok(BoundState {
        spec: *spec,
        n,
        energy,
        norm_const,
        index,
    })
}

/// `(sin z, 1 - sin z, 1 + sin z)`, the last two as `2 sin²(π/4 ∓ z/2)` so
/// they keep full relative accuracy near the well edges.
fn sin_and_gaps<T: Scalar>(z: T, sin: impl Fn(T) -> T) -> (T, T, T) {
    let half = z * 0.5;
    let lo = sin(-half + FRAC_PI_4);
    let hi = sin(half + FRAC_PI_4);
    (sin(z), lo * lo * 2.0, hi * hi * 2.0)
}

fn state_shape<T: Scalar>(
    index: &EopIndex,
    (s, one_minus, one_plus): (T, T, T),
    x: f64,
) -> Result<T> {
    let (a, b) = (index.a, index.b);
    let den = weight_denominator(a, b, index.m, s);
    if den.modulus() < SINGULAR_TOL {
        return Err(singular_at(x, "P_m^(-a-1,b-1) vanishes"));
    }
    let envelope = one_minus.powf(a / 2.0 + 0.25) * one_plus.powf(b / 2.0 + 0.25);
    Ok(envelope / den * eop_eval(index, s)?)
}

impl BoundState {
    /// `ψ_n^(m)(x)`.
    pub fn psi(&self, x: f64) -> Result<Complex64> {
        let spec = &self.spec;
        check_inside(x, spec.wavefunction_domain())?;
        let k = spec.k;
        let v = match spec.family {
            Family::TrigScarf => Complex64::new(
                state_shape(&self.index, sin_and_gaps(k * x, f64::sin), x)?,
                0.0,
            ),
            Family::ShiftedTrigScarf { eps } => state_shape(
                &self.index,
                sin_and_gaps(Complex64::new(k * x, eps), |z| z.sin()),
                x,
            )?,
            Family::HyperbolicScarf => {
                let s = Complex64::new(0.0, (k * x).sinh());
                state_shape(&self.index, (s, 1.0 - s, 1.0 + s), x)?
            }
        };
        Ok(v * self.norm_const)
    }
}

/// `ψ_n^(m)(x)` for the given family.
pub fn wavefunction(spec: &PotentialSpec, n: u32, x: f64) -> Result<Complex64> {
    bound_state(spec, n)?.psi(x)
}

/// `|V*(-x) - V(x)|`; zero for a PT-symmetric potential.
pub fn pt_defect(spec: &PotentialSpec, x: f64) -> Result<f64> {
    let plus = potential_value(spec, x)?;
    let minus = potential_value(spec, -x)?;
    Ok((minus.conj() - plus).norm())
}

/// Parameter regimes in which the potential is PT-symmetric:
/// the hyperbolic family always; the shifted family for `a = ±b` when
/// `m <= 1` and for `a = -b` when `m >= 2`; the real trigonometric family
/// when it is even (`a = b`, any `m`, or `a = -b` at `m = 0`).
pub fn pt_symmetric_regime(spec: &PotentialSpec) -> bool {
    let eq = |u: f64, v: f64| (u - v).abs() <= 1e-12;
    let (a, b) = (spec.a, spec.b);
    match spec.family {
        Family::HyperbolicScarf => true,
        Family::ShiftedTrigScarf { .. } if spec.m <= 1 => eq(a, b) || eq(a, -b),
        Family::ShiftedTrigScarf { .. } => eq(a, -b),
        Family::TrigScarf => eq(a, b) || (spec.m == 0 && eq(a, -b)),
    }
}

pub mod closed_form {
    //! Special cases `m = 0, 1, 2` of the trigonometric family written in the
    //! Scarf couplings `α = (a+b+1)/2`, `β = (b-a)/2`
    //! (equivalently `a = α-β-1/2`, `b = α+β-1/2`).

    /// `(α, β)` from `(a, b)`.
    pub fn alpha_beta(a: f64, b: f64) -> (f64, f64) {
        ((a + b + 1.0) / 2.0, (b - a) / 2.0)
    }

    /// `(a, b)` from `(α, β)`.
    pub fn ab_from_alpha_beta(alpha: f64, beta: f64) -> (f64, f64) {
        (alpha - beta - 0.5, alpha + beta - 0.5)
    }

    fn scarf_core(alpha: f64, beta: f64, k: f64, x: f64) -> (f64, f64, f64) {
        let (s, c) = (k * x).sin_cos();
        let sec2 = 1.0 / (c * c);
        let v = k * k * (alpha * (alpha - 1.0) + beta * beta) * sec2
            - k * k * beta * (2.0 * alpha - 1.0) * s * sec2;
        (v, s, c)
    }

    /// Classical trigonometric Scarf potential.
    pub fn scarf_m0(alpha: f64, beta: f64, k: f64, x: f64) -> f64 {
        scarf_core(alpha, beta, k, x).0
    }

    pub fn scarf_m1(alpha: f64, beta: f64, k: f64, x: f64) -> f64 {
        let (v0, s, _) = scarf_core(alpha, beta, k, x);
        let d = 2.0 * alpha - 1.0 - 2.0 * beta * s;
        let t = 2.0 * alpha - 1.0;
        v0 + 2.0 * k * k * t / d - 2.0 * k * k * (t * t - 4.0 * beta * beta) / (d * d)
    }

    /// `m = 2` member. The quadratic denominator is `8 P_2^(-a-1,b-1)(sin kx)`.
    pub fn scarf_m2(alpha: f64, beta: f64, k: f64, x: f64) -> f64 {
        let (v0, s, c) = scarf_core(alpha, beta, k, x);
        let (ta, tb) = (2.0 * alpha - 1.0, 2.0 * beta + 1.0);
        let d = 2.0 * (beta + 1.0) * tb * s * s - 2.0 * tb * ta * s + 4.0 * alpha * (alpha - 1.0)
            - 2.0 * beta
            - 1.0;
        let num = 3.0 * ta * tb * s - 2.0 * beta * tb - 8.0 * alpha * (alpha - 1.0);
        let l = 2.0 * (1.0 + beta) * s - 2.0 * alpha + 1.0;
        v0 + 4.0 * k * k * num / d + 8.0 * tb * tb * k * k * c * c * l * l / (d * d) + 8.0 * k * k
    }

    pub fn energy_m0(alpha: f64, k: f64, n: u32) -> f64 {
        k * k * (f64::from(n) + alpha).powi(2)
    }

    pub fn energy_m1(alpha: f64, k: f64, n: u32) -> f64 {
        k * k * (f64::from(n) + alpha - 1.0).powi(2)
    }

    pub fn energy_m2(alpha: f64, k: f64, n: u32) -> f64 {
        k * k * (f64::from(n) + alpha - 2.0).powi(2)
    }
}
