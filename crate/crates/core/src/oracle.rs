//! Independent numerical checks of the exact eigenpairs.
//!
//! Two routes, neither of which uses the energy formula:
//!
//! * [`solve_spectrum`] discretizes `H = -d²/dx² + V` with the 3-point
//!   Laplacian and Dirichlet ends and diagonalizes the resulting symmetric
//!   tridiagonal matrix. Only real potentials qualify.
//! * [`hamiltonian_residual`] samples an analytic eigenfunction, applies `H`
//!   with the 4th-order stencil (complex arithmetic when needed) and reports
//!   `max|Hψ - Eψ| / max|ψ|` together with the Rayleigh quotient.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{eigen_sym_tridiag, fd_second_derivative, richardson, TridiagonalSystem};
use crate::potentials::{bound_state, energy, potential_value, Family, PotentialSpec};
use crate::report::{Check, VerificationReport};

/// Fraction of the half-width kept clear of each edge of the trigonometric well.
pub const TRIG_MARGIN: f64 = 1e-3;
/// Decay demanded of a hyperbolic state at the truncation points.
pub const HYPERBOLIC_DECAY: f64 = 1e-8;
pub const MIN_POINTS: usize = 100;

/// Uniform grid with `n_points` interior unknowns and Dirichlet ends at
/// `x_min` and `x_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidInput(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(Error::InvalidInput(format!(
                "grid needs at least {MIN_POINTS} points, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// `[-π/2k + δ, π/2k - δ]` with `δ = 10⁻³ π/2k`.
    pub fn trig_well(spec: &PotentialSpec, n_points: usize) -> Result<Self> {
        let h = spec.half_width() * (1.0 - TRIG_MARGIN);
        Self::new(-h, h, n_points)
    }

    /// `[-L, L]` wide enough for every bound state of a hyperbolic instance.
    pub fn hyperbolic(spec: &PotentialSpec, n_points: usize) -> Result<Self> {
        let count = crate::potentials::hyperbolic_bound_count(spec)?;
        let mut l: f64 = 10.0 / spec.k();
        for n in spec.m()..spec.m() + count {
            l = l.max(decay_length(spec, n)?);
        }
        Self::new(-l, l, n_points)
    }

    /// Grid suited to the whole spectrum of `spec`.
    pub fn for_potential(spec: &PotentialSpec, n_points: usize) -> Result<Self> {
        match spec.family() {
            Family::HyperbolicScarf => Self::hyperbolic(spec, n_points),
            _ => Self::trig_well(spec, n_points),
        }
    }

    /// Grid suited to the single state `n`; hyperbolic truncation is per state.
    pub fn for_state(spec: &PotentialSpec, n: u32, n_points: usize) -> Result<Self> {
        match spec.family() {
            Family::HyperbolicScarf => {
                let l = decay_length(spec, n)?;
                Self::new(-l, l, n_points)
            }
            _ => Self::trig_well(spec, n_points),
        }
    }

    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points as f64 + 1.0)
    }

    /// Interior nodes, excluding the Dirichlet ends.
    pub fn interior(&self) -> Vec<f64> {
        let h = self.step();
        (1..=self.n_points)
            .map(|i| self.x_min + h * i as f64)
            .collect()
    }

    /// All nodes including both ends.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n_points + 2)
            .map(|i| {
                if i == self.n_points + 1 {
                    self.x_max
                } else {
                    self.x_min + h * i as f64
                }
            })
            .collect()
    }

    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::new(self.x_min, self.x_max, n_points)
    }
}

/// Smallest `L` (on a 1.25× ladder) with `|ψ_n(±L)| < 10⁻⁸ max|ψ_n|`.
pub fn decay_length(spec: &PotentialSpec, n: u32) -> Result<f64> {
    let st = bound_state(spec, n)?;
    let mut l = 2.0 / spec.k();
    while l < 1e4 / spec.k() {
        let samples = 4001;
        let mut peak: f64 = 0.0;
        for i in 0..samples {
            let x = -l + 2.0 * l * i as f64 / (samples - 1) as f64;
            peak = peak.max(st.psi(x)?.norm());
        }
        let edge = st.psi(l)?.norm().max(st.psi(-l)?.norm());
        if edge < HYPERBOLIC_DECAY * peak {
            return Ok(l);
        }
        l *= 1.25;
    }
    Err(Error::ConvergenceFailure(format!(
        "state n = {n} does not decay to {HYPERBOLIC_DECAY} of its peak"
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Best estimates: extrapolated when a second grid was used, raw otherwise.
    pub eigenvalues: Vec<f64>,
    pub grid: GridSpec,
    /// Eigenvalues on `grid` alone.
    pub raw: Vec<f64>,
    pub richardson_pair: Option<(GridSpec, Vec<f64>)>,
}

/// Lowest `count` eigenvalues of `-d²/dx² + V` on `grid`.
pub fn solve_potential(
    v: impl Fn(f64) -> Result<f64>,
    grid: &GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    if count > grid.n_points {
        return Err(Error::InvalidInput(format!(
            "requested {count} levels from a {}-point grid",
            grid.n_points
        )));
    }
    let h = grid.step();
    let inv_h2 = 1.0 / (h * h);
    let diag = grid
        .interior()
        .into_iter()
        .map(|x| Ok(2.0 * inv_h2 + v(x)?))
        .collect::<Result<Vec<f64>>>()?;
    let off = vec![-inv_h2; grid.n_points - 1];
    eigen_sym_tridiag(&TridiagonalSystem::new(diag, off)?, count)
}

fn real_potential(spec: &PotentialSpec) -> impl Fn(f64) -> Result<f64> + '_ {
    move |x| {
        let v = potential_value(spec, x)?;
        if v.im.abs() > 1e-10 * v.re.abs().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "potential is complex at x = {x}; use the residual check instead"
            )));
        }
        Ok(v.re)
    }
}

/// Diagonalizes a real instance on a single grid.
pub fn solve_spectrum(
    spec: &PotentialSpec,
    grid: &GridSpec,
    count: usize,
) -> Result<SpectrumResult> {
    if matches!(spec.family(), Family::ShiftedTrigScarf { .. }) {
        return Err(Error::InvalidInput(
            "the shifted family is complex; use the residual check instead".into(),
        ));
    }
    let raw = solve_potential(real_potential(spec), grid, count)?;
    Ok(SpectrumResult {
        eigenvalues: raw.clone(),
        grid: *grid,
        raw,
        richardson_pair: None,
    })
}

/// Solves on `grid` and on a grid with `2N` points, then removes the `h²` term.
pub fn solve_spectrum_richardson(
    spec: &PotentialSpec,
    grid: &GridSpec,
    count: usize,
) -> Result<SpectrumResult> {
    let coarse = solve_spectrum(spec, grid, count)?;
    let fine_grid = grid.with_points(2 * grid.n_points)?;
    let fine = solve_spectrum(spec, &fine_grid, count)?;
    let (h1, h2) = (grid.step(), fine_grid.step());
    let eigenvalues = coarse
        .raw
        .iter()
        .zip(&fine.raw)
        .map(|(&v1, &v2)| richardson(h1, v1, h2, v2, 2))
        .collect();
    Ok(SpectrumResult {
        eigenvalues,
        grid: *grid,
        raw: coarse.raw,
        richardson_pair: Some((fine_grid, fine.raw)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub n: u32,
    pub energy: f64,
    /// `max|Hψ - Eψ| / max|ψ|` over nodes where the central stencil applies.
    pub residual: f64,
    /// `⟨ψ, Hψ⟩ / ⟨ψ, ψ⟩` by the trapezoid rule.
    #[serde(serialize_with = "ser_complex")]
    pub rayleigh: Complex64,
    /// `max(|ψ(x_min)|, |ψ(x_max)|) / max|ψ|`.
    pub edge_ratio: f64,
    pub grid: GridSpec,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

/// Applies the discretized Hamiltonian to the analytic `ψ_n` on `grid`.
pub fn hamiltonian_residual(
    spec: &PotentialSpec,
    n: u32,
    grid: &GridSpec,
) -> Result<ResidualReport> {
    let st = bound_state(spec, n)?;
    let xs = grid.nodes();
    let psi = xs.iter().map(|&x| st.psi(x)).collect::<Result<Vec<_>>>()?;
    let d2 = fd_second_derivative(&psi, grid.step())?;
    let peak = psi.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(peak > 0.0 && peak.is_finite()) {
        return Err(Error::ConvergenceFailure(format!(
            "wavefunction n = {n} has no finite nonzero samples on the grid"
        )));
    }
    let mut residual: f64 = 0.0;
    let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
    let last = xs.len() - 1;
    for i in 2..=last - 2 {
        let h_psi = -d2[i] + potential_value(spec, xs[i])? * psi[i];
        residual = residual.max((h_psi - psi[i] * st.energy).norm());
        num += psi[i].conj() * h_psi;
        den += psi[i].norm_sqr();
    }
    Ok(ResidualReport {
        n,
        energy: st.energy,
        residual: residual / peak,
        rayleigh: num / den,
        edge_ratio: psi[0].norm().max(psi[last].norm()) / peak,
        grid: *grid,
    })
}

/// Per-level relative comparison; relative to `|analytic|`.
pub fn compare_levels(
    name: &str,
    analytic: &[f64],
    numeric: &[f64],
    tol: f64,
) -> VerificationReport {
    let mut report = VerificationReport::new(name);
    if analytic.len() != numeric.len() {
        report.push(Check::failed(
            format!("{name}: level count"),
            format!("{} analytic vs {} numeric", analytic.len(), numeric.len()),
        ));
    }
    for (i, (&e, &v)) in analytic.iter().zip(numeric).enumerate() {
        let rel = (v - e).abs() / e.abs().max(f64::MIN_POSITIVE);
        report.push(
            Check::at_most(format!("{name}: level {i}"), rel, tol)
                .with_detail(format!("analytic {e}, numeric {v}")),
        );
    }
    report
}

/// Oracle spectrum against `energy(spec, n)` for `n = m .. m+count-1`.
pub fn spectrum_match_report(
    spec: &PotentialSpec,
    count: usize,
    tol: f64,
    n_points: usize,
) -> Result<VerificationReport> {
    let grid = GridSpec::for_potential(spec, n_points)?;
    let result = solve_spectrum_richardson(spec, &grid, count)?;
    let analytic = (0..count as u32)
        .map(|j| energy(spec, spec.m() + j))
        .collect::<Result<Vec<_>>>()?;
    let name = format!(
        "spectrum {} m={} a={} b={} k={}",
        spec.family().name(),
        spec.m(),
        spec.a(),
        spec.b(),
        spec.k()
    );
    Ok(compare_levels(&name, &analytic, &result.eigenvalues, tol))
}
