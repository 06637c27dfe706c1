//! Lowest eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence
//! bisection.

use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
}

impl TridiagonalSystem {
    /// `off_diagonal` must have one element fewer than `diagonal`.
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::InvalidInput("empty tridiagonal system".into()));
        }
        if off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidInput(format!(
                "off-diagonal length {} does not match diagonal length {}",
                off_diagonal.len(),
                diagonal.len()
            )));
        }
        if diagonal.iter().chain(&off_diagonal).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self {
            diagonal,
            off_diagonal,
        })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    /// Max-row-sum norm, which bounds the spectral radius.
    pub fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.off_diagonal[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the LDLᵀ
    /// factorization of `T - xI`).
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = self.pivot_floor();
        let mut count = 0;
        let mut q = self.diagonal[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let e = self.off_diagonal[i - 1];
            q = self.diagonal[i] - x - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn pivot_floor(&self) -> f64 {
        let emax = self
            .off_diagonal
            .iter()
            .fold(1.0_f64, |acc, e| acc.max(e * e));
        f64::MIN_POSITIVE * emax
    }
}

/// The `count` smallest eigenvalues in ascending order.
///
/// Each eigenvalue is bracketed by Gershgorin bounds and bisected on the
/// Sturm count until the bracket is within a few ulps of its magnitude
/// (absolute accuracy well inside `1e-12 · ‖T‖`).
pub fn eigen_sym_tridiag(sys: &TridiagonalSystem, count: usize) -> Result<Vec<f64>> {
    let n = sys.dim();
    if count > n {
        return Err(Error::InvalidInput(format!(
            "requested {count} eigenvalues of a {n}x{n} matrix"
        )));
    }
    let (glo, ghi) = sys.gershgorin();
    let span = (ghi - glo).max(f64::MIN_POSITIVE);
    let lo0 = glo - 1e-3 * span - f64::MIN_POSITIVE;
    let hi0 = ghi + 1e-3 * span + f64::MIN_POSITIVE;
    let abs_tol = 2.0 * f64::EPSILON * glo.abs().max(ghi.abs());

    let mut out = Vec::with_capacity(count);
    let mut floor = lo0;
    for j in 0..count {
        // eigenvalue j is the smallest x with count_below(x) > j
        let mut lo = floor;
        let mut hi = hi0;
        let mut converged = false;
        for _ in 0..MAX_BISECTIONS {
            let tol = abs_tol.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs()));
            if hi - lo <= tol {
                converged = true;
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                converged = true;
                break;
            }
            if sys.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if !converged {
            return Err(Error::ConvergenceFailure(format!(
                "bisection for eigenvalue {j} did not close its bracket"
            )));
        }
        let lambda = 0.5 * (lo + hi);
        out.push(lambda);
        floor = lo;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn three_by_three() {
        let sys = TridiagonalSystem::new(vec![2.0; 3], vec![-1.0; 2]).unwrap();
        let ev = eigen_sym_tridiag(&sys, 3).unwrap();
        let s2 = 2f64.sqrt();
        for (g, w) in ev.iter().zip([2.0 - s2, 2.0, 2.0 + s2]) {
            assert!((g - w).abs() < 1e-12 * sys.norm());
        }
    }

    #[test]
    fn identity() {
        let sys = TridiagonalSystem::new(vec![1.0; 7], vec![0.0; 6]).unwrap();
        let ev = eigen_sym_tridiag(&sys, 7).unwrap();
        assert!(ev.iter().all(|&v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn discrete_laplacian() {
        let n = 50;
        let sys = TridiagonalSystem::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let ev = eigen_sym_tridiag(&sys, n).unwrap();
        for (j, v) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * (PI * (j + 1) as f64 / (n + 1) as f64).cos();
            assert!((v - want).abs() < 1e-12 * sys.norm(), "j = {j}");
        }
    }

    #[test]
    fn single_element() {
        let sys = TridiagonalSystem::new(vec![-3.5], vec![]).unwrap();
        assert!((eigen_sym_tridiag(&sys, 1).unwrap()[0] + 3.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(TridiagonalSystem::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagonalSystem::new(vec![], vec![]).is_err());
        let sys = TridiagonalSystem::new(vec![1.0, 2.0], vec![0.5]).unwrap();
        assert!(eigen_sym_tridiag(&sys, 3).is_err());
    }

    /// Brute-force oracle for dims <= 4: roots of the characteristic
    /// polynomial det(T - λI) (continuant recurrence), located by a fine scan
    /// and refined by bisection on the polynomial itself.
    fn char_poly_roots(d: &[f64], e: &[f64]) -> Vec<f64> {
        let charp = |l: f64| {
            let (mut p0, mut p1) = (1.0, d[0] - l);
            for i in 1..d.len() {
                let p2 = (d[i] - l) * p1 - e[i - 1] * e[i - 1] * p0;
                p0 = p1;
                p1 = p2;
            }
            p1
        };
        let bound = d.iter().map(|v| v.abs()).sum::<f64>()
            + 2.0 * e.iter().map(|v| v.abs()).sum::<f64>()
            + 1.0;
        let steps = 200_000;
        let mut roots = Vec::new();
        let mut prev_x = -bound;
        let mut prev = charp(prev_x);
        for i in 1..=steps {
            let x = -bound + 2.0 * bound * i as f64 / steps as f64;
            let v = charp(x);
            if v == 0.0 || (v < 0.0) != (prev < 0.0) {
                let (mut a, mut b) = (prev_x, x);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if (charp(m) < 0.0) == (charp(a) < 0.0) {
                        a = m
                    } else {
                        b = m
                    }
                }
                roots.push(0.5 * (a + b));
            }
            prev_x = x;
            prev = v;
        }
        roots
    }

    #[test]
    fn matches_characteristic_polynomial_small_dims() {
        let cases: Vec<(Vec<f64>, Vec<f64>)> = vec![
            (vec![1.0, -2.0], vec![0.7]),
            (vec![0.3, 1.1, -0.4], vec![0.9, -1.3]),
            (vec![4.0, -1.0, 2.5, 0.0], vec![1.0, 0.25, -2.0]),
        ];
        for (d, e) in cases {
            let sys = TridiagonalSystem::new(d.clone(), e.clone()).unwrap();
            let ev = eigen_sym_tridiag(&sys, d.len()).unwrap();
            let oracle = char_poly_roots(&d, &e);
            assert_eq!(oracle.len(), d.len());
            for (g, w) in ev.iter().zip(&oracle) {
                assert!((g - w).abs() < 1e-11, "{g} vs {w}");
            }
        }
    }
}
