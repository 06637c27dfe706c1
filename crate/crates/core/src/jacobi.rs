//! Classical Jacobi polynomials `P_n^(a,b)(x)` for arbitrary real parameters.
//!
//! Evaluation uses the explicit binomial sum
//!
//! ```text
//! P_n^(a,b)(x) = Σ_{s=0}^{n} C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
//! ```
//!
//! with the generalized binomial `C(α, j)` formed as a `j`-term product. The
//! three-term recurrence is not used: its coefficients divide by
//! `(2n+a+b)`-type factors that vanish for the negative parameters the
//! exceptional polynomials need (e.g. `P_m^(-a-1,b-1)`).
//!
//! Degree `-1` evaluates to zero so that formulas containing `P_{m-1}` reduce
//! cleanly at `m = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scalar::Scalar;

/// Tolerance for deciding that a real number "is" an integer.
pub const INTEGER_TOL: f64 = 1e-12;

/// Degree and parameters of a classical Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParam {
    pub n: u32,
    pub a: f64,
    pub b: f64,
}

impl JacobiParam {
    pub fn new(n: u32, a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!(
                "Jacobi parameters must be finite (a = {a}, b = {b})"
            )));
        }
        Ok(Self { n, a, b })
    }
}

/// `P_n^(a,b)(x)` at a complex point.
pub fn jacobi_eval(p: &JacobiParam, x: Complex64) -> Complex64 {
    jacobi(i64::from(p.n), p.a, p.b, x)
}

/// r-th derivative of `P_n^(a,b)` at a complex point (`r >= 1`).
pub fn jacobi_deriv(p: &JacobiParam, x: Complex64, r: u32) -> Complex64 {
    jacobi_derivative(i64::from(p.n), p.a, p.b, x, r)
}

/// Generalized binomial coefficient `C(alpha, j) = alpha (alpha-1) ... (alpha-j+1) / j!`.
pub fn generalized_binomial(alpha: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| {
        acc * (alpha - f64::from(i)) / f64::from(i + 1)
    })
}

/// Rising factorial `(x)_r = x (x+1) ... (x+r-1)`.
pub fn pochhammer(x: f64, r: u32) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (x + f64::from(i)))
}

pub(crate) fn near_integer(v: f64) -> Option<i64> {
    let r = v.round();
    ((v - r).abs() <= INTEGER_TOL).then_some(r as i64)
}

/// `C(n+a, j)` and `C(n+b, j)` for `j = 0..=n`.
fn sum_coefficients(n: u32, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let na = f64::from(n) + a;
    let nb = f64::from(n) + b;
    let mut ca = Vec::with_capacity(n as usize + 1);
    let mut cb = Vec::with_capacity(n as usize + 1);
    let (mut xa, mut xb) = (1.0, 1.0);
    for j in 0..=n {
        ca.push(xa);
        cb.push(xb);
        let jf = f64::from(j);
        xa *= (na - jf) / (jf + 1.0);
        xb *= (nb - jf) / (jf + 1.0);
    }
    (ca, cb)
}

/// Beyond this modulus the argument is treated as far from `[-1, 1]`.
const FAR_FIELD: f64 = 3.0;

/// Coefficients of `P_n^(a,b)` in powers of `(x-1)/2`:
/// `c_s = (a+s+1)_(n-s) (n+a+b+1)_s / (s! (n-s)!)`. Factors within
/// [`INTEGER_TOL`] of zero are set to zero, so a collapsed degree stays collapsed.
fn shifted_power_coefficients(n: u32, a: f64, b: f64) -> Vec<f64> {
    let snap = |v: f64| if v.abs() <= INTEGER_TOL { 0.0 } else { v };
    let rising = |x: f64, r: u32| (0..r).fold(1.0, |acc, i| acc * snap(x + f64::from(i)));
    let top = f64::from(n) + a + b + 1.0;
    (0..=n)
        .map(|s| {
            rising(a + f64::from(s) + 1.0, n - s) * rising(top, s)
                / (factorial(s) * factorial(n - s))
        })
        .collect()
}

fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * f64::from(i))
}

fn powers<T: Scalar>(base: T, n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = T::one();
    for _ in 0..=n {
        out.push(acc);
        acc = acc * base;
    }
    out
}

/// `P_n^(a,b)(x)`; negative degree returns zero.
///
/// Evaluated by the two-factor binomial sum in `(x-1)/2` and `(x+1)/2`.
/// For `|x| > 3` (the `i sinh kx` arguments of the hyperbolic family) the
/// single power sum in `(x-1)/2` is used instead.
pub fn jacobi<T: Scalar>(n: i64, a: f64, b: f64, x: T) -> T {
    if n < 0 {
        return T::zero();
    }
    if n == 0 {
        return T::one();
    }
    let n = n as u32;
    let u = (x - 1.0) * 0.5;
    if x.modulus() > FAR_FIELD {
        // the two-factor sum cancels catastrophically when the true degree is below n
        return shifted_power_coefficients(n, a, b)
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * u + c);
    }
    let (ca, cb) = sum_coefficients(n, a, b);
    let v = (x + 1.0) * 0.5;
    let nu = n as usize;
    let up = powers(u, nu);
    let vp = powers(v, nu);
    let mut acc = T::zero();
    for s in 0..=nu {
        acc = acc + up[s] * vp[nu - s] * (ca[nu - s] * cb[s]);
    }
    acc
}

/// r-th derivative of `P_n^(a,b)` by differentiating the binomial sum term by
/// term (Leibniz rule on `u^s v^(n-s)` with `u' = v' = 1/2`).
pub fn jacobi_derivative_termwise<T: Scalar>(n: i64, a: f64, b: f64, x: T, r: u32) -> T {
    if r == 0 {
        return jacobi(n, a, b, x);
    }
    if n < i64::from(r) {
        return T::zero();
    }
    let n = n as u32;
    let u = (x - 1.0) * 0.5;
    if x.modulus() > FAR_FIELD {
        // the two-factor sum cancels catastrophically when the true degree is below n
        return shifted_power_coefficients(n, a, b)
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * u + c);
    }
    let (ca, cb) = sum_coefficients(n, a, b);
    let v = (x + 1.0) * 0.5;
    let nu = n as usize;
    let up = powers(u, nu);
    let vp = powers(v, nu);
    let falling = |s: usize, i: usize| -> f64 { (0..i).map(|q| (s - q) as f64).product() };
    let scale = 0.5f64.powi(r as i32);
    let ru = r as usize;
    let mut acc = T::zero();
    for s in 0..=nu {
        let t = nu - s;
        let coeff = ca[t] * cb[s];
        if coeff == 0.0 {
            continue;
        }
        let mut inner = T::zero();
        for i in 0..=ru {
            let j = ru - i;
            if i > s || j > t {
                continue;
            }
            let c = generalized_binomial(r as f64, i as u32) * falling(s, i) * falling(t, j);
            inner = inner + up[s - i] * vp[t - j] * c;
        }
        acc = acc + inner * coeff;
    }
    acc * scale
}

/// r-th derivative of `P_n^(a,b)`.
///
/// Uses `d^r/dx^r P_n^(a,b) = (a+b+n+1)_r / 2^r · P_{n-r}^(a+r,b+r)`. The
/// Gamma ratio of the usual statement is evaluated as a Pochhammer product,
/// and when `a+b+n+1` is a nonpositive integer (a Gamma pole of that
/// statement) the term-by-term route is used instead.
pub fn jacobi_derivative<T: Scalar>(n: i64, a: f64, b: f64, x: T, r: u32) -> T {
    if r == 0 {
        return jacobi(n, a, b, x);
    }
    if n < i64::from(r) {
        return T::zero();
    }
    let lead = a + b + n as f64 + 1.0;
    if matches!(near_integer(lead), Some(k) if k <= 0) {
        return jacobi_derivative_termwise(n, a, b, x, r);
    }
    let rf = f64::from(r);
    let factor = pochhammer(lead, r) / 2f64.powi(r as i32);
    jacobi(n - i64::from(r), a + rf, b + rf, x) * factor
}

/// Value, first and second derivative of `P_n^(a,b)` with respect to its argument.
pub fn jacobi_jet<T: Scalar>(n: i64, a: f64, b: f64, x: T) -> Jet<T> {
    Jet::new(
        jacobi(n, a, b, x),
        jacobi_derivative(n, a, b, x, 1),
        jacobi_derivative(n, a, b, x, 2),
    )
}

/// `P_n^(a,b)(g(x))` as a jet in `x`, given the jet of the inner argument `g`.
pub fn jacobi_of<T: Scalar>(n: i64, a: f64, b: f64, g: Jet<T>) -> Jet<T> {
    let p = jacobi_jet(n, a, b, g.value);
    g.compose(p.value, p.d1, p.d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: expand P_n^(a,b) into monomial coefficients by
    /// convolving ((x-1)/2)^s ((x+1)/2)^(n-s) in the power basis.
    fn monomial_coefficients(n: u32, a: f64, b: f64) -> Vec<f64> {
        let nu = n as usize;
        let mut total = vec![0.0; nu + 1];
        for s in 0..=nu {
            // poly of (x-1)^s (x+1)^(n-s) / 2^n
            let mut poly = vec![1.0];
            for _ in 0..s {
                poly = mul_linear(&poly, -1.0);
            }
            for _ in 0..(nu - s) {
                poly = mul_linear(&poly, 1.0);
            }
            let c = generalized_binomial(f64::from(n) + a, (nu - s) as u32)
                * generalized_binomial(f64::from(n) + b, s as u32)
                / 2f64.powi(n as i32);
            for (t, p) in total.iter_mut().zip(&poly) {
                *t += c * p;
            }
        }
        total
    }

    fn mul_linear(p: &[f64], c: f64) -> Vec<f64> {
        // p(x) * (x + c)
        let mut out = vec![0.0; p.len() + 1];
        for (i, &v) in p.iter().enumerate() {
            out[i] += c * v;
            out[i + 1] += v;
        }
        out
    }

    fn eval_monomial_derivative(coeffs: &[f64], x: f64, r: usize) -> f64 {
        coeffs
            .iter()
            .enumerate()
            .skip(r)
            .map(|(i, &c)| {
                let f: f64 = (0..r).map(|q| (i - q) as f64).product();
                c * f * x.powi((i - r) as i32)
            })
            .sum()
    }

    #[test]
    fn degree_zero_is_one() {
        let p = JacobiParam::new(0, 2.3, -1.7).unwrap();
        assert_eq!(
            jacobi_eval(&p, Complex64::new(0.4, 0.0)),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn negative_degree_is_zero() {
        assert_eq!(jacobi(-1, 0.3, 0.2, 0.5), 0.0);
    }

    #[test]
    fn collapsed_degree_far_from_interval() {
        // (n+a+b+1)_2 = 0: P_2^(2.5,-5.5) is the constant 63/8
        for x in [0.3, 2.9, 3.1, -40.0, 1e6] {
            assert!((jacobi(2, 2.5, -5.5, x) - 7.875).abs() < 1e-12);
        }
        let z = Complex64::new(0.0, -6.4e9);
        let v = jacobi(2, 2.5, -5.5, z);
        assert!((v - Complex64::new(7.875, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn far_field_branch_agrees_with_binomial_sum() {
        for (n, a, b) in [(3, 0.5, -1.2), (5, -2.3, 1.7), (7, 1.1, 0.4)] {
            for z in [
                Complex64::new(3.5, 0.0),
                Complex64::new(0.2, 4.0),
                Complex64::new(-6.0, -2.0),
            ] {
                let (ca, cb) = sum_coefficients(n as u32, a, b);
                let (u, v) = ((z - 1.0) * 0.5, (z + 1.0) * 0.5);
                let sum = (0..=n as usize).fold(Complex64::new(0.0, 0.0), |acc, s| {
                    acc + u.powu(s as u32)
                        * v.powu((n as usize - s) as u32)
                        * (ca[n as usize - s] * cb[s])
                });
                assert!(
                    (jacobi(n, a, b, z) - sum).norm() < 1e-12 * sum.norm(),
                    "n={n} z={z}"
                );
            }
        }
    }

    #[test]
    fn hand_expanded_p2_11() {
        // P_2^(1,1)(x) = (3/4)(5x² - 1)
        let v = jacobi(2, 1.0, 1.0, 0.5);
        assert!((v - 0.1875).abs() < 1e-15);
        let d = jacobi_derivative(2, 1.0, 1.0, 0.5, 1);
        assert!((d - 3.75).abs() < 1e-14);
    }

    #[test]
    fn value_at_one_for_degree_one() {
        for a0 in [-3.5, -1.0, 0.0, 2.25] {
            assert!((jacobi(1, a0, 0.7, 1.0) - (a0 + 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn third_derivative_of_cubic_is_six_times_leading_coefficient() {
        let coeffs = monomial_coefficients(3, 0.5, 0.5);
        let expected = 6.0 * coeffs[3];
        // (5)(6)(7) / (2^3 3!) * 6 = 26.25
        assert!((expected - 26.25).abs() < 1e-13);
        for x in [-0.9, 0.2, 0.77] {
            assert!((jacobi_derivative(3, 0.5, 0.5, x, 3) - 26.25).abs() < 1e-12);
            assert!((jacobi_derivative_termwise(3, 0.5, 0.5, x, 3) - 26.25).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_has_zero_derivative() {
        assert_eq!(jacobi_derivative(0, 1.3, -4.0, 0.1, 1), 0.0);
    }

    #[test]
    fn gamma_pole_branch_uses_termwise_route() {
        // a+b+n+1 = 0 at n = 2, a = -1.5, b = -1.5; derivative must still be exact.
        let coeffs = monomial_coefficients(2, -1.5, -1.5);
        for x in [-0.4, 0.3, 0.9] {
            let want = eval_monomial_derivative(&coeffs, x, 1);
            assert!((jacobi_derivative(2, -1.5, -1.5, x, 1) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn real_input_has_exactly_zero_imaginary_part() {
        let p = JacobiParam::new(5, -3.2, 1.9).unwrap();
        for i in 0..21 {
            let x = -1.0 + 0.1 * f64::from(i);
            assert_eq!(jacobi_eval(&p, Complex64::new(x, 0.0)).im, 0.0);
            assert_eq!(jacobi_deriv(&p, Complex64::new(x, 0.0), 2).im, 0.0);
        }
    }

    proptest! {
        #[test]
        fn matches_monomial_oracle(n in 0u32..9, a in -6.0f64..6.0, b in -6.0f64..6.0, x in -1.0f64..1.0) {
            let coeffs = monomial_coefficients(n, a, b);
            let scale = coeffs.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
            for r in 0..=3usize {
                let want = eval_monomial_derivative(&coeffs, x, r);
                let got = jacobi_derivative(i64::from(n), a, b, x, r as u32);
                let tw = jacobi_derivative_termwise(i64::from(n), a, b, x, r as u32);
                let tol = 1e-11 * scale * (1 + r * r * n as usize) as f64;
                prop_assert!((got - want).abs() < tol, "r={r} got={got} want={want}");
                prop_assert!((tw - want).abs() < tol);
            }
        }

        #[test]
        fn reflection_symmetry(n in 0i64..9, a in -4.0f64..4.0, b in -4.0f64..4.0, x in -1.0f64..1.0) {
            let lhs = jacobi(n, a, b, -x);
            let rhs = if n % 2 == 0 { 1.0 } else { -1.0 } * jacobi(n, b, a, x);
            prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + rhs.abs()));
        }

        #[test]
        fn identity_a(m in 2i64..7, a in -3.0f64..3.0, b in -3.0f64..3.0, x in -1.0f64..1.0) {
            let mf = m as f64;
            let t1 = (1.0 - x * x) * (a + b + mf + 2.0) * jacobi(m - 2, a + 2.0, b + 2.0, x);
            let t2 = 2.0 * (b - a - (a + b + 2.0) * x) * jacobi(m - 1, a + 1.0, b + 1.0, x);
            let t3 = 4.0 * mf * jacobi(m, a, b, x);
            let scale = t1.abs() + t2.abs() + t3.abs() + 1.0;
            prop_assert!((t1 + t2 + t3).abs() < 1e-10 * scale);
        }

        #[test]
        fn identity_b(m in 1i64..7, a in -3.0f64..3.0, b in -3.0f64..3.0, x in -1.0f64..1.0) {
            let mf = m as f64;
            let lhs = (x - 1.0) * (a + b + mf + 1.0) * jacobi(m - 1, a + 1.0, b + 1.0, x);
            let r1 = 2.0 * (a + mf) * jacobi(m, a - 1.0, b + 1.0, x);
            let r2 = 2.0 * a * jacobi(m, a, b, x);
            let scale = lhs.abs() + r1.abs() + r2.abs() + 1.0;
            prop_assert!((lhs - (r1 - r2)).abs() < 1e-10 * scale);
        }

        #[test]
        fn identity_c(m in 1i64..7, a in -3.0f64..3.0, b in -3.0f64..3.0, x in -1.0f64..1.0) {
            let lhs = jacobi(m, a, b - 1.0, x) - jacobi(m, a - 1.0, b, x);
            let rhs = jacobi(m - 1, a, b, x);
            let scale = jacobi(m, a, b - 1.0, x).abs() + rhs.abs() + 1.0;
            prop_assert!((lhs - rhs).abs() < 1e-10 * scale);
        }

        #[test]
        fn classical_ode(n in 0i64..10, a in -4.0f64..4.0, b in -4.0f64..4.0, x in -1.0f64..1.0) {
            let j = jacobi_jet(n, a, b, x);
            let nf = n as f64;
            let res = (1.0 - x * x) * j.d2 + (b - a - (a + b + 2.0) * x) * j.d1 + nf * (nf + a + b + 1.0) * j.value;
            let scale = (1.0 - x * x).abs() * j.d2.abs() + j.d1.abs() * 10.0 + nf * nf * j.value.abs() * 10.0 + 1.0;
            prop_assert!(res.abs() < 1e-9 * scale);
        }
    }
}
