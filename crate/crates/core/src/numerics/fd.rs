use crate::error::{Error, Result};
use crate::scalar::Scalar;

const CENTRAL: [f64; 5] = [-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0];
// one-sided, fourth order (six points)
const EDGE0: [f64; 6] = [
    15.0 / 4.0,
    -77.0 / 6.0,
    107.0 / 6.0,
    -13.0,
    61.0 / 12.0,
    -5.0 / 6.0,
];
const EDGE1: [f64; 6] = [
    5.0 / 6.0,
    -5.0 / 4.0,
    -1.0 / 3.0,
    7.0 / 6.0,
    -1.0 / 2.0,
    1.0 / 12.0,
];
// five-point fallbacks (third order) for the minimum grid of five samples
const EDGE0_SHORT: [f64; 5] = [
    35.0 / 12.0,
    -26.0 / 3.0,
    19.0 / 2.0,
    -14.0 / 3.0,
    11.0 / 12.0,
];
const EDGE1_SHORT: [f64; 5] = [11.0 / 12.0, -5.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0, -1.0 / 12.0];

fn apply<T: Scalar>(values: &[T], start: usize, stencil: &[f64], reversed: bool) -> T {
    let mut acc = T::zero();
    for (k, &c) in stencil.iter().enumerate() {
        let idx = if reversed { start - k } else { start + k };
        acc = acc + values[idx] * c;
    }
    acc
}

/// Second derivative of uniformly spaced samples.
///
/// Fourth-order central stencil on the interior and fourth-order one-sided
/// stencils on the two points nearest each edge. With exactly five samples
/// the edge stencils drop to third order.
pub fn fd_second_derivative<T: Scalar>(values: &[T], h: f64) -> Result<Vec<T>> {
    let n = values.len();
    if n < 5 {
        return Err(Error::InvalidInput(format!(
            "second-derivative stencil needs at least 5 samples, got {n}"
        )));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "grid spacing must be positive, got {h}"
        )));
    }
    let inv = 1.0 / (h * h);
    let (e0, e1): (&[f64], &[f64]) = if n >= 6 {
        (&EDGE0, &EDGE1)
    } else {
        (&EDGE0_SHORT, &EDGE1_SHORT)
    };
    let mut out = Vec::with_capacity(n);
    out.push(apply(values, 0, e0, false) * inv);
    out.push(apply(values, 0, e1, false) * inv);
    for i in 2..n - 2 {
        out.push(apply(values, i - 2, &CENTRAL, false) * inv);
    }
    // mirror of the left stencils; second derivative is even under reflection
    out.push(apply(values, n - 1, e1, true) * inv);
    out.push(apply(values, n - 1, e0, true) * inv);
    Ok(out)
}
