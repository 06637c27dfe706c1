//! Named verification batteries.
//!
//! Each suite runs a built-in parameter battery, plus the caller's parameters
//! when given, and records one [`Check`] per property. Evaluation errors are
//! recorded as failed checks rather than aborting the suite.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::eop::{
    admissible, eop_eval, eop_inner_product, eop_norm_sq, eop_ode_residual_relative, EopIndex,
    DEFAULT_QUAD_ORDER,
};
use crate::error::{Error, Result};
use crate::jacobi::{generalized_binomial, jacobi, jacobi_derivative, jacobi_derivative_termwise};
use crate::oracle::{
    compare_levels, hamiltonian_residual, solve_spectrum_richardson, GridSpec, ResidualReport,
};
use crate::potentials::closed_form::{alpha_beta, scarf_m0, scarf_m1, scarf_m2};
use crate::potentials::{
    energy, potential_value, pt_defect, pt_symmetric_regime, trig_potential_continued, Family,
    PotentialSpec,
};
use crate::report::{Check, VerificationReport};
use crate::susy::{partner_potential, partner_potential_closed_form, shape_invariance_scan, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Orthogonality,
    Ode,
    ShapeInvariance,
    Pt,
    QuasiHermitian,
    Oracle,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "identities",
        "orthogonality",
        "ode",
        "shape-invariance",
        "pt",
        "quasi-hermitian",
        "oracle",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "orthogonality" => Suite::Orthogonality,
            "ode" => Suite::Ode,
            "shape-invariance" => Suite::ShapeInvariance,
            "pt" => Suite::Pt,
            "quasi-hermitian" => Suite::QuasiHermitian,
            "oracle" => Suite::Oracle,
            "all" => Suite::All,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown suite '{other}' (expected one of {})",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::Identities => 0,
            Suite::Orthogonality => 1,
            Suite::Ode => 2,
            Suite::ShapeInvariance => 3,
            Suite::Pt => 4,
            Suite::QuasiHermitian => 5,
            Suite::Oracle => 6,
            Suite::All => 7,
        };
        f.write_str(Suite::NAMES[i])
    }
}

/// Extra parameters supplied by the caller; unset fields fall back to defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserParams {
    pub family: Family,
    pub m: u32,
    pub a: f64,
    pub b: f64,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub quad_order: usize,
    /// Interior points of the coarse oracle grid; the fine grid has twice as many.
    pub oracle_points: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            quad_order: DEFAULT_QUAD_ORDER,
            oracle_points: 4000,
        }
    }
}

/// `(m, a, b)` triples admissible for the trigonometric family.
pub const TRIG_BATTERY: [(u32, f64, f64); 4] =
    [(0, 2.0, 2.0), (1, 1.0, 2.0), (2, 4.0, 1.5), (3, 5.3, 1.7)];

/// Five admissible `(a, b)` pairs for codimension `m >= 1`.
pub fn eop_pairs(m: u32) -> [(f64, f64); 5] {
    let mf = f64::from(m);
    [
        (mf + 0.7, 0.3),
        (mf + 2.1, 1.4),
        (mf + 0.25, 2.9),
        (mf + 3.3, 0.45),
        (mf + 1.1, 3.7),
    ]
}

pub fn run(suite: Suite, user: Option<&UserParams>, opts: &SuiteOptions) -> VerificationReport {
    let mut report = match suite {
        Suite::Identities => identities(user),
        Suite::Orthogonality => orthogonality(user, opts),
        Suite::Ode => ode(user),
        Suite::ShapeInvariance => shape_invariance(user),
        Suite::Pt => pt(user),
        Suite::QuasiHermitian => quasi_hermitian(user, opts),
        Suite::Oracle => oracle(user, opts),
        Suite::All => {
            let mut all = VerificationReport::new("all");
            for s in [
                Suite::Identities,
                Suite::Orthogonality,
                Suite::Ode,
                Suite::ShapeInvariance,
                Suite::Pt,
                Suite::QuasiHermitian,
                Suite::Oracle,
            ] {
                all.extend(run(s, user, opts));
            }
            all
        }
    };
    report.suite = suite.to_string();
    report
}

fn record(report: &mut VerificationReport, name: &str, check: Result<Check>) {
    match check {
        Ok(c) => report.push(c),
        Err(e) => report.push(Check::failed(name, e.to_string())),
    }
}

fn max_over<I: IntoIterator<Item = f64>>(it: I) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for v in it {
        if v.is_nan() {
            return Err(Error::ConvergenceFailure("NaN in measurement".into()));
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

fn well_grid(spec: &PotentialSpec, points: usize, margin: f64) -> Vec<f64> {
    let h = spec.half_width() * (1.0 - margin);
    (0..points)
        .map(|i| -h + 2.0 * h * (i as f64 + 0.5) / points as f64)
        .collect()
}

/// User parameters that belong in checks on the real trigonometric well.
fn trig_user(user: Option<&UserParams>) -> Option<&UserParams> {
    user.filter(|u| u.family == Family::TrigScarf)
}

fn trig_specs(user: Option<&UserParams>) -> Vec<Result<PotentialSpec>> {
    let mut specs: Vec<_> = TRIG_BATTERY
        .iter()
        .map(|&(m, a, b)| PotentialSpec::trig(m, a, b, 1.0))
        .collect();
    if let Some(u) = trig_user(user) {
        specs.push(PotentialSpec::trig(u.m, u.a, u.b, u.k));
    }
    specs
}

fn label(spec: &PotentialSpec) -> String {
    format!(
        "{} m={} a={} b={} k={}",
        spec.family().name(),
        spec.m(),
        spec.a(),
        spec.b(),
        spec.k()
    )
}

pub fn identities(user: Option<&UserParams>) -> VerificationReport {
    let mut report = VerificationReport::new("identities");
    let params = [(0.5, 0.5), (-0.3, 1.7), (2.0, 3.0), (-1.5, -2.5)];
    let xs: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * f64::from(i)).collect();

    let mut worst: f64 = 0.0;
    for &(a, b) in &params {
        for n in 0..8 {
            for r in 1..4 {
                for &x in &xs {
                    let p = jacobi_derivative(n, a, b, x, r);
                    let q = jacobi_derivative_termwise(n, a, b, x, r);
                    worst = worst.max(rel(p, q));
                }
            }
        }
    }
    report.push(Check::at_most(
        "jacobi: derivative identity vs termwise",
        worst,
        1e-10,
    ));

    let mut worst: f64 = 0.0;
    for &(a, b) in &params {
        for n in 0..8u32 {
            worst = worst.max(rel(
                jacobi(i64::from(n), a, b, 1.0),
                generalized_binomial(f64::from(n) + a, n),
            ));
            for &x in &xs {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let l = jacobi(i64::from(n), a, b, -x);
                let rgt = sign * jacobi(i64::from(n), b, a, x);
                worst = worst.max(rel(l, rgt));
            }
        }
    }
    report.push(Check::at_most(
        "jacobi: endpoint value and reflection",
        worst,
        1e-12,
    ));

    let m0 = (|| {
        let mut worst: f64 = 0.0;
        for &(a, b) in &params {
            for n in 0..6 {
                let idx = EopIndex::new(a, b, 0, n)?;
                for &x in &xs {
                    worst = worst.max(rel(eop_eval(&idx, x)?, jacobi(i64::from(n), a, b, x)));
                }
            }
        }
        Ok(Check::at_most("eop: m = 0 is classical Jacobi", worst, 0.0))
    })();
    record(&mut report, "eop: m = 0 is classical Jacobi", m0);

    let mut cases: Vec<(u32, f64, f64, f64)> = vec![
        (0, 2.0, 2.0, 1.0),
        (0, 2.3, 0.9, 0.8),
        (1, 1.0, 2.0, 1.0),
        (1, 2.6, 1.1, 1.3),
        (2, 4.0, 1.5, 1.0),
        (2, 3.6, 2.7, 0.7),
    ];
    if let Some(u) = trig_user(user) {
        if u.m <= 2 {
            cases.push((u.m, u.a, u.b, u.k));
        }
    }
    for (m, a, b, k) in cases {
        let name = format!("closed form m={m} a={a} b={b} k={k}");
        let check = (|| {
            let spec = PotentialSpec::trig(m, a, b, k)?;
            let (al, be) = alpha_beta(a, b);
            let tol = if m == 0 { 1e-12 } else { 1e-10 };
            let worst = max_over(
                well_grid(&spec, 1000, 1e-3)
                    .into_iter()
                    .map(|x| {
                        let v = potential_value(&spec, x)?.re;
                        let c = match m {
                            0 => scarf_m0(al, be, k, x),
                            1 => scarf_m1(al, be, k, x),
                            _ => scarf_m2(al, be, k, x),
                        };
                        Ok((v - c).abs() / v.abs().max(1.0))
                    })
                    .collect::<Result<Vec<_>>>()?,
            )?;
            Ok(Check::at_most(name.clone(), worst, tol))
        })();
        record(&mut report, &name, check);
    }

    let iso = (|| {
        let (a, b, k) = trig_user(user).map_or((4.0, 1.5, 1.0), |u| (u.a, u.b, u.k));
        let mut worst: f64 = 0.0;
        for j in 0..6 {
            let e0 = energy(
                &PotentialSpec::new(Family::ShiftedTrigScarf { eps: 0.0 }, 0, a, b, k)?,
                j,
            )?;
            for m in 1..4 {
                let spec = PotentialSpec::new(Family::ShiftedTrigScarf { eps: 0.0 }, m, a, b, k)?;
                worst = worst.max((energy(&spec, j + m)? - e0).abs());
            }
        }
        Ok(Check::at_most("isospectral energies m = 0..3", worst, 0.0))
    })();
    record(&mut report, "isospectral energies m = 0..3", iso);
    report
}

fn eop_families(
    user: Option<&UserParams>,
    ms: std::ops::RangeInclusive<u32>,
    per_m: usize,
) -> Vec<(f64, f64, u32)> {
    let mut fams = vec![(0.0, 0.0, 0)];
    for m in ms {
        for &(a, b) in eop_pairs(m).iter().take(per_m) {
            fams.push((a, b, m));
        }
    }
    // The polynomials do not depend on the family, but the weight is only
    // positive for admissible parameters.
    if let Some(u) = user.filter(|u| u.family == Family::TrigScarf || admissible(u.a, u.b, u.m)) {
        fams.push((u.a, u.b, u.m));
    }
    fams
}

pub fn orthogonality(user: Option<&UserParams>, opts: &SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new("orthogonality");
    for (a, b, m) in eop_families(user, 1..=4, 2) {
        let name = format!("gram m={m} a={a} b={b}");
        let result = gram_check(a, b, m, 5, opts.quad_order);
        match result {
            Ok((off, diag)) => {
                report.push(Check::at_most(format!("{name}: off-diagonal"), off, 1e-8));
                report.push(Check::at_most(
                    format!("{name}: diagonal vs closed-form norm"),
                    diag,
                    1e-8,
                ));
            }
            Err(e) => report.push(Check::failed(name, e.to_string())),
        }
    }
    report
}

/// Largest normalized off-diagonal entry and largest relative diagonal error
/// of the Gram matrix of `P̂_m … P̂_{m+size-1}`.
pub fn gram_check(a: f64, b: f64, m: u32, size: u32, quad_order: usize) -> Result<(f64, f64)> {
    let idx: Vec<EopIndex> = (m..m + size)
        .map(|n| EopIndex::new(a, b, m, n))
        .collect::<Result<_>>()?;
    let mut g = vec![vec![0.0; idx.len()]; idx.len()];
    for i in 0..idx.len() {
        for j in i..idx.len() {
            g[i][j] = eop_inner_product(&idx[i], &idx[j], quad_order)?;
            g[j][i] = g[i][j];
        }
    }
    let (mut off, mut diag): (f64, f64) = (0.0, 0.0);
    for i in 0..idx.len() {
        let norm = eop_norm_sq(&idx[i])?;
        diag = diag.max((g[i][i] - norm).abs() / norm.abs());
        for j in 0..idx.len() {
            if i != j {
                off = off.max(g[i][j].abs() / (g[i][i] * g[j][j]).abs().sqrt());
            }
        }
    }
    Ok((off, diag))
}

pub fn ode(user: Option<&UserParams>) -> VerificationReport {
    let mut report = VerificationReport::new("ode");
    let xs: Vec<f64> = (0..50)
        .map(|i| -1.0 + 2.0 * (f64::from(i) + 0.5) / 50.0)
        .collect();
    for (a, b, m) in eop_families(user, 1..=4, 5) {
        let name = format!("ode m={m} a={a} b={b} n={m}..{}", m + 5);
        let check = (|| {
            let mut worst: f64 = 0.0;
            for n in m..=m + 5 {
                let idx = EopIndex::new(a, b, m, n)?;
                for &x in &xs {
                    worst = worst.max(eop_ode_residual_relative(&idx, x)?);
                }
            }
            Ok(Check::at_most(name.clone(), worst, 1e-8))
        })();
        record(&mut report, &name, check);
    }
    report
}

pub fn shape_invariance(user: Option<&UserParams>) -> VerificationReport {
    let mut report = VerificationReport::new("shape-invariance");
    for spec in trig_specs(user) {
        let spec = match spec {
            Ok(s) => s,
            Err(e) => {
                report.push(Check::failed("shape invariance: parameters", e.to_string()));
                continue;
            }
        };
        let base = label(&spec);
        match shape_invariance_scan(&spec, 1000) {
            Ok(s) => {
                let detail = format!(
                    "remainder k^2(a+b+2) = {}, {} points, {} skipped",
                    s.remainder, s.evaluated, s.skipped
                );
                report.push(
                    Check::at_most(
                        format!("{base}: shape invariance defect"),
                        s.max_defect,
                        1e-8,
                    )
                    .with_detail(detail.clone()),
                );
                if spec.m() == 0 {
                    report.push(
                        Check::at_most(
                            format!("{base}: shape invariance defect relative to |V+|"),
                            s.max_relative_defect,
                            1e-12,
                        )
                        .with_detail(detail),
                    );
                }
            }
            Err(e) => report.push(Check::failed(base.clone(), e.to_string())),
        }
        let partners = (|| -> Result<(f64, f64)> {
            let fact = spec.factorization_energy();
            let (mut minus, mut plus): (f64, f64) = (0.0, 0.0);
            for x in well_grid(&spec, 1000, 1e-2) {
                let v = potential_value(&spec, x)?.re;
                let vm = partner_potential(&spec, Sign::Minus, x)?;
                minus = minus.max((vm + fact - v).abs() / v.abs().max(1.0));
                let vp = partner_potential(&spec, Sign::Plus, x)?;
                let cp = partner_potential_closed_form(&spec, Sign::Plus, x)?;
                plus = plus.max((vp - cp).abs() / cp.abs().max(1.0));
            }
            Ok((minus, plus))
        })();
        match partners {
            Ok((minus, plus)) => {
                report.push(Check::at_most(
                    format!("{base}: V- + factorization energy = V"),
                    minus,
                    1e-9,
                ));
                report.push(Check::at_most(
                    format!("{base}: V+ closed form"),
                    plus,
                    1e-9,
                ));
            }
            Err(e) => report.push(Check::failed(format!("{base}: partners"), e.to_string())),
        }
    }
    report
}

/// Largest PT defect on a symmetric grid.
pub fn pt_scan(spec: &PotentialSpec, points: usize) -> Result<f64> {
    let half = match spec.family() {
        Family::HyperbolicScarf => 6.0 / spec.k(),
        _ => spec.half_width() * 0.99,
    };
    max_over(
        (0..points)
            .map(|i| pt_defect(spec, -half + 2.0 * half * (i as f64 + 0.5) / points as f64))
            .collect::<Result<Vec<_>>>()?,
    )
}

pub fn pt(user: Option<&UserParams>) -> VerificationReport {
    let mut report = VerificationReport::new("pt");
    let mut specs = vec![
        PotentialSpec::hyperbolic(0, 0.7, -2.2, 1.0),
        PotentialSpec::hyperbolic(2, -3.5, -4.5, 1.0),
        PotentialSpec::hyperbolic(3, 1.3, 0.4, 0.8),
        PotentialSpec::shifted(0, 2.0, 2.0, 1.0, 0.3),
        PotentialSpec::shifted(1, 2.5, -2.5, 1.0, 0.3),
        PotentialSpec::shifted(1, 2.5, 2.5, 1.0, 0.3),
        PotentialSpec::shifted(2, 1.5, -1.5, 1.0, 0.3),
        PotentialSpec::shifted(3, 2.2, -2.2, 1.0, 0.5),
        // negative controls
        PotentialSpec::shifted(0, 2.0, 1.0, 1.0, 0.3),
        PotentialSpec::shifted(2, 2.5, 2.5, 1.0, 0.3),
    ];
    if let Some(u) = user {
        specs.push(match u.family {
            Family::TrigScarf => {
                PotentialSpec::new(Family::ShiftedTrigScarf { eps: 0.3 }, u.m, u.a, u.b, u.k)
            }
            f => PotentialSpec::new(f, u.m, u.a, u.b, u.k),
        });
    }
    for spec in specs {
        let spec = match spec {
            Ok(s) => s,
            Err(e) => {
                report.push(Check::failed("pt: parameters", e.to_string()));
                continue;
            }
        };
        let name = format!("pt {}", label(&spec));
        let check = pt_scan(&spec, 401).map(|d| {
            if pt_symmetric_regime(&spec) {
                Check::at_most(format!("{name}: symmetric regime"), d, 1e-10)
            } else {
                Check::at_least(format!("{name}: broken regime (negative control)"), d, 1e-6)
            }
        });
        record(&mut report, &name, check);
    }
    report
}

/// Grid refinements tried by [`shifted_eigenpair_checks`]: `N, 2N, 4N`.
pub const RESIDUAL_REFINEMENTS: u32 = 3;
const RESIDUAL_TOL: f64 = 1e-6;
const RAYLEIGH_IM_TOL: f64 = 1e-8;

/// Residual and Rayleigh quotient checks of every requested level of a shifted instance.
///
/// States concentrated near the well edge need finer grids than the default,
/// while roundoff in the second difference grows like `1/h²`; the grid is
/// doubled up to [`RESIDUAL_REFINEMENTS`] times until both checks hold on
/// the same grid, and the grid size used is reported.
pub fn shifted_eigenpair_checks(spec: &PotentialSpec, levels: u32, points: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in spec.m()..spec.m() + levels {
        let name = format!("{} n={n}", label(spec));
        let score = |r: &ResidualReport| {
            (r.residual / RESIDUAL_TOL).max(r.rayleigh.im.abs() / RAYLEIGH_IM_TOL)
        };
        let mut best: Option<ResidualReport> = None;
        let attempt = (|| -> Result<()> {
            for step in 0..RESIDUAL_REFINEMENTS {
                let grid = GridSpec::for_state(spec, n, points << step)?;
                let r = hamiltonian_residual(spec, n, &grid)?;
                if best.as_ref().is_none_or(|b| score(&r) < score(b)) {
                    best = Some(r);
                }
                if score(&r) <= 1.0 {
                    break;
                }
            }
            Ok(())
        })();
        match (attempt, best) {
            (Ok(()), Some(r)) => {
                let grid = format!("{} points", r.grid.n_points);
                out.push(
                    Check::at_most(format!("{name}: residual"), r.residual, RESIDUAL_TOL)
                        .with_detail(grid.clone()),
                );
                out.push(
                    Check::at_most(
                        format!("{name}: |Im Rayleigh quotient|"),
                        r.rayleigh.im.abs(),
                        RAYLEIGH_IM_TOL,
                    )
                    .with_detail(format!("Re = {}, E = {}, {grid}", r.rayleigh.re, r.energy)),
                );
            }
            (Err(e), _) => out.push(Check::failed(name, e.to_string())),
            (Ok(()), None) => out.push(Check::failed(name, "no grid evaluated")),
        }
    }
    out
}

pub fn quasi_hermitian(user: Option<&UserParams>, opts: &SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new("quasi-hermitian");
    let mut cases: Vec<(u32, f64, f64, f64, f64)> = [0.1, 0.5]
        .iter()
        .flat_map(|&eps| {
            TRIG_BATTERY
                .iter()
                .map(move |&(m, a, b)| (m, a, b, 1.0, eps))
        })
        .collect();
    if let Some(u) = user {
        let shifts: &[f64] = match u.family {
            Family::TrigScarf => &[0.1, 0.5],
            Family::ShiftedTrigScarf { eps } => &[eps][..],
            Family::HyperbolicScarf => &[],
        };
        cases.extend(shifts.iter().map(|&eps| (u.m, u.a, u.b, u.k, eps)));
    }
    for &(m, a, b, k, eps) in &cases {
        let spec = match PotentialSpec::shifted(m, a, b, k, eps) {
            Ok(s) => s,
            Err(e) => {
                report.push(Check::failed("quasi-hermitian: parameters", e.to_string()));
                continue;
            }
        };
        for c in shifted_eigenpair_checks(&spec, 5, opts.oracle_points) {
            report.push(c);
        }
        let name = format!("{}: shift identity", label(&spec));
        let check = (|| {
            let mut worst: f64 = 0.0;
            for i in 0..201 {
                let x = -3.0 + 0.03 * f64::from(i);
                let lhs = potential_value(&spec, x)?;
                let rhs = trig_potential_continued(m, a, b, k, Complex64::new(x, eps / k))?;
                worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
            }
            Ok(Check::at_most(name.clone(), worst, 1e-10))
        })();
        record(&mut report, &name, check);
    }
    report
}

pub fn oracle(user: Option<&UserParams>, opts: &SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new("oracle");
    let square = (|| {
        let grid = GridSpec::new(0.0, std::f64::consts::PI, opts.oracle_points)?;
        let ev = crate::oracle::solve_potential(|_| Ok(0.0), &grid, 4)?;
        max_over(
            ev.iter()
                .enumerate()
                .map(|(j, e)| rel(*e, ((j + 1) * (j + 1)) as f64)),
        )
    })();
    record(
        &mut report,
        "square well",
        square.map(|d| Check::at_most("square well {1,4,9,16}", d, 1e-4)),
    );

    let (a, b, k) = user
        .filter(|u| u.family == Family::TrigScarf)
        .map_or((4.0, 1.5, 1.0), |u| (u.a, u.b, u.k));
    let mut spectra = Vec::new();
    for m in 0..=2 {
        let name = format!("oracle trig m={m} a={a} b={b} k={k}");
        let res = (|| -> Result<(Vec<f64>, Vec<f64>)> {
            let spec = PotentialSpec::trig(m, a, b, k)?;
            let grid = GridSpec::trig_well(&spec, opts.oracle_points)?;
            let res = solve_spectrum_richardson(&spec, &grid, 5)?;
            let analytic = (0..5)
                .map(|j| energy(&spec, m + j))
                .collect::<Result<Vec<_>>>()?;
            Ok((res.eigenvalues, analytic))
        })();
        match res {
            Ok((numeric, analytic)) => {
                report.extend(compare_levels(&name, &analytic, &numeric, 1e-3));
                spectra.push((m, numeric));
            }
            Err(e) => report.push(Check::failed(name, e.to_string())),
        }
    }
    for w in spectra.windows(2) {
        let ((m1, s1), (m2, s2)) = (&w[0], &w[1]);
        let d =
            max_over(s1.iter().zip(s2).map(|(x, y)| (x - y).abs() / x.abs())).unwrap_or(f64::NAN);
        report.push(Check::at_most(
            format!("isospectral oracle m={m1} vs m={m2}"),
            d,
            2e-3,
        ));
    }

    let mut hyper = vec![PotentialSpec::hyperbolic(2, -3.5, -4.5, 1.0)];
    if let Some(u) = user.filter(|u| u.family == Family::HyperbolicScarf) {
        hyper.push(PotentialSpec::hyperbolic(u.m, u.a, u.b, u.k));
    }
    for spec in hyper {
        let spec = match spec {
            Ok(s) => s,
            Err(e) => {
                report.push(Check::failed(
                    "oracle hyperbolic: parameters",
                    e.to_string(),
                ));
                continue;
            }
        };
        let count = crate::potentials::hyperbolic_bound_count(&spec).unwrap_or(0);
        for n in spec.m()..spec.m() + count {
            let name = format!("{} n={n}", label(&spec));
            let r = GridSpec::for_state(&spec, n, 20_000)
                .and_then(|g| hamiltonian_residual(&spec, n, &g));
            match r {
                Ok(r) => {
                    report.push(Check::at_most(
                        format!("{name}: residual"),
                        r.residual,
                        1e-6,
                    ));
                    report.push(Check::at_most(
                        format!("{name}: decay at +-L"),
                        r.edge_ratio,
                        1e-8,
                    ));
                }
                Err(e) => report.push(Check::failed(name, e.to_string())),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eop::admissible;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn battery_is_admissible() {
        for (m, a, b) in TRIG_BATTERY {
            assert!(admissible(a, b, m));
        }
        for m in 1..=4 {
            for (a, b) in eop_pairs(m) {
                assert!(admissible(a, b, m), "m={m} a={a} b={b}");
            }
        }
    }

    #[test]
    fn cheap_suites_pass() {
        let opts = SuiteOptions::default();
        for suite in [
            Suite::Identities,
            Suite::Orthogonality,
            Suite::Ode,
            Suite::ShapeInvariance,
            Suite::Pt,
        ] {
            let r = run(suite, None, &opts);
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{suite}: {bad:#?}");
        }
    }

    #[test]
    fn user_parameters_are_included() {
        let u = UserParams {
            family: Family::TrigScarf,
            m: 1,
            a: 1.0,
            b: 2.0,
            k: 1.0,
        };
        let r = shape_invariance(Some(&u));
        assert!(r
            .checks
            .iter()
            .any(|c| c.detail.contains("remainder k^2(a+b+2) = 5")));
        assert!(r.passed());
    }
}
