//! Superpotential and partner potentials of the extended trigonometric Scarf family.
//!
//! `V∓ = W² ∓ W'` with `W'` taken from the jet of `W`, so no finite
//! differences enter the shape-invariance defect.

use serde::Serialize;

use crate::eop::SINGULAR_TOL;
use crate::error::{Error, Result};
use crate::jacobi::{jacobi, jacobi_of};
use crate::jet::Jet;
use crate::potentials::{trig_potential, Family, PotentialSpec, ENDPOINT_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SusyPair {
    pub spec: PotentialSpec,
    /// `k²(a+b+1)²/4`
    pub factorization_energy: f64,
}

impl SusyPair {
    pub fn new(spec: PotentialSpec) -> Result<Self> {
        if spec.family() != Family::TrigScarf {
            return Err(Error::InvalidInput(
                "partner potentials are defined for the trigonometric family".into(),
            ));
        }
        Ok(Self {
            spec,
            factorization_energy: spec.factorization_energy(),
        })
    }
}

/// Raw parameter set; the shifted partner `(a+1, b+1)` need not be admissible.
#[derive(Debug, Clone, Copy)]
struct Params {
    m: u32,
    a: f64,
    b: f64,
    k: f64,
}

impl From<&PotentialSpec> for Params {
    fn from(s: &PotentialSpec) -> Self {
        Self {
            m: s.m(),
            a: s.a(),
            b: s.b(),
            k: s.k(),
        }
    }
}

fn check_trig(spec: &PotentialSpec, x: f64) -> Result<()> {
    if spec.family() != Family::TrigScarf {
        return Err(Error::InvalidInput(
            "partner potentials are defined for the trigonometric family".into(),
        ));
    }
    let h = spec.half_width();
    if !x.is_finite() || x.abs() >= h - ENDPOINT_GUARD {
        return Err(Error::OutOfDomain { x, lo: -h, hi: h });
    }
    Ok(())
}

fn nonzero(d: Jet<f64>, x: f64, what: &str) -> Result<Jet<f64>> {
    if d.value.abs() < SINGULAR_TOL {
        return Err(Error::SingularPoint {
            x,
            what: what.to_string(),
        });
    }
    Ok(d)
}

fn w_jet(p: Params, x: f64) -> Result<Jet<f64>> {
    let Params { m, a, b, k } = p;
    let (sn, cs) = (k * x).sin_cos();
    if cs.abs() < SINGULAR_TOL {
        return Err(Error::SingularPoint {
            x,
            what: "cos(kx) vanishes".into(),
        });
    }
    let s = Jet::new(sn, k * cs, -k * k * sn);
    let c = Jet::new(cs, -k * sn, -k * k * cs);
    let sec = c.recip();
    let mut w = sec * (k * (a - b) / 2.0) + s * sec * (k * (a + b + 1.0) / 2.0);
    if m > 0 {
        let mi = i64::from(m);
        let d1 = nonzero(
            jacobi_of(mi, -a - 1.0, b - 1.0, s),
            x,
            "P_m^(-a-1,b-1) vanishes",
        )?;
        let d2 = nonzero(jacobi_of(mi, -a - 2.0, b, s), x, "P_m^(-a-2,b) vanishes")?;
        let r1 = jacobi_of(mi - 1, -a, b, s) / d1;
        let r2 = jacobi_of(mi - 1, -a - 1.0, b + 1.0, s) / d2;
        let shift = a - b - f64::from(m) + 1.0;
        w = w - c * (r1 - r2) * (k * shift / 2.0);
    }
    Ok(w)
}

/// `W^(m)(x)` with its first two derivatives.
pub fn superpotential_jet(spec: &PotentialSpec, x: f64) -> Result<Jet<f64>> {
    check_trig(spec, x)?;
    w_jet(spec.into(), x)
}

pub fn superpotential(spec: &PotentialSpec, x: f64) -> Result<f64> {
    Ok(superpotential_jet(spec, x)?.value)
}

fn partner_raw(p: Params, sign: Sign, x: f64) -> Result<f64> {
    let w = w_jet(p, x)?;
    Ok(match sign {
        Sign::Minus => w.value * w.value - w.d1,
        Sign::Plus => w.value * w.value + w.d1,
    })
}

/// `V^(m)∓(x) = W² ∓ W'`.
pub fn partner_potential(spec: &PotentialSpec, sign: Sign, x: f64) -> Result<f64> {
    check_trig(spec, x)?;
    partner_raw(spec.into(), sign, x)
}

/// Partner potentials in their expanded closed forms.
pub fn partner_potential_closed_form(spec: &PotentialSpec, sign: Sign, x: f64) -> Result<f64> {
    check_trig(spec, x)?;
    let (m, a, b, k) = (spec.m(), spec.a(), spec.b(), spec.k());
    let fact = spec.factorization_energy();
    match sign {
        Sign::Minus => Ok(trig_potential(m, a, b, k, x)? - fact),
        Sign::Plus => {
            let (s, c) = (k * x).sin_cos();
            let (sec, tan) = (1.0 / c, s / c);
            let (a1, b1) = (a + 1.0, b + 1.0);
            let shift = a - b - f64::from(m) + 1.0;
            let k2 = k * k;
            let mut v = k2 * (2.0 * a1 * a1 + 2.0 * b1 * b1 - 1.0) / 4.0 * sec * sec
                - k2 * (b1 * b1 - a1 * a1) / 2.0 * sec * tan
                - fact;
            if m > 0 {
                let mi = i64::from(m);
                let den = jacobi(mi, -a - 2.0, b, s);
                if den.abs() < SINGULAR_TOL {
                    return Err(Error::SingularPoint {
                        x,
                        what: "P_m^(-a-2,b) vanishes".into(),
                    });
                }
                let r2 = jacobi(mi - 1, -a - 1.0, b + 1.0, s) / den;
                v += -k2 * shift * (a + b + 2.0 + (a - b + 1.0) * s) * r2
                    + k2 * shift * shift * c * c / 2.0 * r2 * r2
                    - 2.0 * k2 * f64::from(m) * shift;
            }
            Ok(v)
        }
    }
}

/// `|V+(a,b;x) - V-(a+1,b+1;x) - k²(a+b+2)|`.
pub fn shape_invariance_defect(spec: &PotentialSpec, x: f64) -> Result<f64> {
    Ok(defect_and_scale(spec, x)?.0)
}

/// The defect and `max(1, |V+|)`, the magnitude that sets its rounding floor.
fn defect_and_scale(spec: &PotentialSpec, x: f64) -> Result<(f64, f64)> {
    check_trig(spec, x)?;
    let p = Params::from(spec);
    let q = Params {
        a: p.a + 1.0,
        b: p.b + 1.0,
        ..p
    };
    let plus = partner_raw(p, Sign::Plus, x)?;
    let minus = partner_raw(q, Sign::Minus, x)?;
    let defect = (plus - minus - p.k * p.k * (p.a + p.b + 2.0)).abs();
    Ok((defect, plus.abs().max(1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeInvarianceScan {
    pub max_defect: f64,
    /// Largest defect divided by `max(1, |V+|)` at the same point.
    pub max_relative_defect: f64,
    /// `k²(a+b+2)`
    pub remainder: f64,
    pub evaluated: usize,
    /// Points dropped because a denominator vanished there.
    pub skipped: usize,
}

/// Fraction of the half-width left out at each edge by [`shape_invariance_scan`].
pub const SCAN_MARGIN: f64 = 1e-2;

/// Largest absolute defect on `points` equally spaced interior points of the well.
pub fn shape_invariance_scan(spec: &PotentialSpec, points: usize) -> Result<ShapeInvarianceScan> {
    if points == 0 {
        return Err(Error::InvalidInput("scan needs at least one point".into()));
    }
    let h = spec.half_width() * (1.0 - SCAN_MARGIN);
    let mut scan = ShapeInvarianceScan {
        max_defect: 0.0,
        max_relative_defect: 0.0,
        remainder: spec.k() * spec.k() * (spec.a() + spec.b() + 2.0),
        evaluated: 0,
        skipped: 0,
    };
    for i in 0..points {
        let x = -h + 2.0 * h * (i as f64 + 0.5) / points as f64;
        match defect_and_scale(spec, x) {
            Ok((d, scale)) => {
                scan.max_defect = scan.max_defect.max(d);
                scan.max_relative_defect = scan.max_relative_defect.max(d / scale);
                scan.evaluated += 1;
            }
            Err(Error::SingularPoint { .. }) => scan.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(scan)
}
