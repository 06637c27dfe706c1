//! Second-order jets: a value together with its first and second derivative
//! with respect to one independent variable.
//!
//! Arithmetic on jets is the product/quotient/chain rule truncated at order
//! two, so every closed form built from Jacobi polynomials can be
//! differentiated exactly instead of by finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
}

impl<T: Scalar> Jet<T> {
    pub fn new(value: T, d1: T, d2: T) -> Self {
        Self { value, d1, d2 }
    }

    pub fn constant(value: T) -> Self {
        Self::new(value, T::zero(), T::zero())
    }

    /// The independent variable itself.
    pub fn variable(x: T) -> Self {
        Self::new(x, T::one(), T::zero())
    }

    /// Chain rule: `self` is the inner function h, and `(f, f', f'')` are the
    /// outer function's derivatives evaluated at `h.value`.
    pub fn compose(self, f: T, df: T, d2f: T) -> Self {
        Self::new(f, df * self.d1, d2f * self.d1 * self.d1 + df * self.d2)
    }

    pub fn scale(self, c: f64) -> Self {
        Self::new(self.value * c, self.d1 * c, self.d2 * c)
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        let v = T::one() / self.value;
        // (1/h)' = -h'/h², (1/h)'' = 2h'²/h³ - h''/h²
        let v2 = v * v;
        Self::new(
            v,
            -(self.d1 * v2),
            (self.d1 * self.d1 * v2 * v) * 2.0 - self.d2 * v2,
        )
    }
}

impl<T: Scalar> Add for Jet<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl<T: Scalar> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.value - o.value, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl<T: Scalar> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.value, -self.d1, -self.d2)
    }
}

impl<T: Scalar> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.value * o.value,
            self.d1 * o.value + self.value * o.d1,
            self.d2 * o.value + self.d1 * o.d1 * 2.0 + self.value * o.d2,
        )
    }
}

impl<T: Scalar> Div for Jet<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<T: Scalar> Add<f64> for Jet<T> {
    type Output = Self;
    fn add(self, c: f64) -> Self {
        Self::new(self.value + c, self.d1, self.d2)
    }
}

impl<T: Scalar> Mul<f64> for Jet<T> {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        self.scale(c)
    }
}
