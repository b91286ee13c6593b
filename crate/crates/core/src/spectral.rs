//! Per-mode amplification factors.
//!
//! A sweep with pair update `(alpha, beta, lambda)` maps the Fourier mode
//! `u_j = e^{i theta j}` to `g u_j` with
//!
//! ```text
//! ascending:  g = (gamma + lambda e^{i theta}) / (1 - beta e^{-i theta})
//! descending: g = (gamma + beta e^{-i theta}) / (1 - lambda e^{i theta})
//! ```
//!
//! (exact away from the periodic wrap pair). Compositions multiply or
//! combine these factors exactly as the steppers combine sweeps.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::composition::{restrict, CompositionPlan, Equation, Scheme, SchemeSpec, StepParams};
use crate::coefficients::{diffusion_gamma, DiffusionVariant};
use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, Field1D};
use crate::sweep::{PairUpdate, SweepDirection};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationSample {
    pub theta: f64,
    pub g: Complex64,
    pub magnitude: f64,
    /// `h` with `g = e^{-h}`.
    pub exponent_h: Complex64,
    /// `-arg g`, principal branch.
    pub phase: f64,
}

impl AmplificationSample {
    pub fn from_g(theta: f64, g: Complex64) -> Self {
        Self { theta, g, magnitude: g.norm(), exponent_h: -g.ln(), phase: -g.arg() }
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("theta = {theta} outside [0, pi]")))
    }
}

/// `e^{-4 r sin^2(theta/2) - i eta sin theta}`, restricted to the terms the equation has.
pub fn exact_factor(equation: Equation, p: StepParams, theta: f64) -> Complex64 {
    let p = restrict(equation, p);
    let s = (0.5 * theta).sin();
    Complex64::new(-4.0 * p.r * s * s, -p.eta * theta.sin()).exp()
}

pub fn exact_amplification(equation: Equation, r: f64, eta: f64, theta: f64) -> Result<AmplificationSample> {
    check_theta(theta)?;
    Ok(AmplificationSample::from_g(theta, exact_factor(equation, StepParams::new(r, eta), theta)))
}

pub fn sweep_factor(u: &PairUpdate, dir: SweepDirection, theta: f64) -> Complex64 {
    let e = Complex64::from_polar(1.0, theta);
    let one = Complex64::new(1.0, 0.0);
    match dir {
        SweepDirection::Ascending => (u.gamma() + u.lambda * e) / (one - u.beta * e.conj()),
        SweepDirection::Descending => (u.gamma() + u.beta * e.conj()) / (one - u.lambda * e),
    }
}

fn spec_factor(spec: &SchemeSpec, p: StepParams, theta: f64) -> Result<Complex64> {
    let base = |q: StepParams| -> Result<Complex64> {
        spec.sweeps(q)?
            .iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, (u, dir)| Ok(acc * sweep_factor(u, *dir, theta)))
    };
    match spec.plan() {
        CompositionPlan::None => base(p),
        CompositionPlan::SingleProduct(a) => {
            a.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &ai| Ok(acc * base(p.scaled(ai))?))
        }
        CompositionPlan::MultiProduct(terms) => terms.iter().try_fold(Complex64::new(0.0, 0.0), |acc, t| {
            let g = base(p.scaled(1.0 / f64::from(t.substeps)))?;
            Ok(acc + t.weight * g.powu(t.substeps))
        }),
    }
}

/// Closed-form amplification factor of one step of `scheme`.
pub fn scheme_factor(scheme: &Scheme, p: StepParams, theta: f64) -> Result<Complex64> {
    match scheme {
        Scheme::Split(spec) => spec_factor(spec, p, theta),
        Scheme::Sequential { advection, diffusion } => {
            Ok(spec_factor(diffusion, p.diffusion_part(), theta)? * spec_factor(advection, p.advection_part(), theta)?)
        }
        Scheme::Euler => Ok(comparator_factor(Comparator::Euler, p, theta)),
        Scheme::LaxWendroff => Ok(comparator_factor(Comparator::LaxWendroff, p, theta)),
        Scheme::Exact(e) => Ok(exact_factor(*e, p, theta)),
        Scheme::Repeated { inner, times } => {
            Ok(scheme_factor(inner, p.scaled(1.0 / f64::from(*times)), theta)?.powu(*times))
        }
    }
}

pub fn scheme_amplification(scheme: &Scheme, r: f64, eta: f64, theta: f64) -> Result<AmplificationSample> {
    check_theta(theta)?;
    Ok(AmplificationSample::from_g(theta, scheme_factor(scheme, StepParams::new(r, eta), theta)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    Euler,
    CrankNicolson,
    LaxWendroff,
}

pub fn comparator_factor(c: Comparator, p: StepParams, theta: f64) -> Complex64 {
    let s2 = (0.5 * theta).sin().powi(2);
    match c {
        Comparator::Euler => Complex64::new(1.0 - 4.0 * p.r * s2, 0.0),
        Comparator::CrankNicolson => Complex64::new((1.0 - 2.0 * p.r * s2) / (1.0 + 2.0 * p.r * s2), 0.0),
        Comparator::LaxWendroff => Complex64::new(1.0 - 2.0 * p.eta * p.eta * s2, -p.eta * theta.sin()),
    }
}

pub fn comparator_amplification(c: Comparator, r: f64, eta: f64, theta: f64) -> Result<AmplificationSample> {
    check_theta(theta)?;
    Ok(AmplificationSample::from_g(theta, comparator_factor(c, StepParams::new(r, eta), theta)))
}

/// Finest theta increment used when unwrapping phases.
pub const PHASE_RESOLUTION: f64 = PI / 1024.0;

/// `-arg g(theta)` continued from 0 at `theta = 0`.
pub fn phase_angle(scheme: &Scheme, eta: f64, theta: f64) -> Result<f64> {
    if scheme.equation() != Equation::Advection {
        return Err(Error::Domain(format!("phase angle needs an advection scheme, got {}", scheme.equation())));
    }
    check_theta(theta)?;
    let p = StepParams::new(0.0, eta);
    let n = (theta / PHASE_RESOLUTION).ceil().max(1.0) as usize;
    let mut prev = scheme_factor(scheme, p, 0.0)?;
    let mut phase = -prev.arg();
    for k in 1..=n {
        let g = scheme_factor(scheme, p, theta * k as f64 / n as f64)?;
        phase -= (g / prev).arg();
        prev = g;
    }
    Ok(phase)
}

/// Grid length used for numerical readout: the periodic wrap pair leaves a
/// transient that decays geometrically away from index 0, so the mode is
/// replicated onto a longer lattice and sampled in the middle.
const READOUT_MIN_POINTS: usize = 2048;

fn has_wrap_transient(scheme: &Scheme) -> bool {
    match scheme {
        Scheme::Split(_) | Scheme::Sequential { .. } => true,
        Scheme::Repeated { inner, .. } => has_wrap_transient(inner),
        Scheme::Euler | Scheme::LaxWendroff | Scheme::Exact(_) => false,
    }
}

/// Runs one actual step on `u_j = e^{i theta j}` and reads off the factor.
/// `theta` must be a lattice mode `2 pi m / n`.
pub fn numeric_amplification(scheme: &Scheme, r: f64, eta: f64, theta: f64, n: usize) -> Result<AmplificationSample> {
    check_theta(theta)?;
    if n < crate::grid::MIN_POINTS {
        return Err(Error::Size { got: n, min: crate::grid::MIN_POINTS, max: usize::MAX });
    }
    let m = theta * n as f64 / (2.0 * PI);
    if (m - m.round()).abs() > 1e-9 {
        return Err(Error::Parameter(format!("theta = {theta} is not a lattice mode of N = {n}")));
    }
    let len = if has_wrap_transient(scheme) { n * READOUT_MIN_POINTS.div_ceil(n) } else { n };
    let theta_lattice = 2.0 * PI * m.round() / n as f64;
    let mut re = Field1D::from_fn(len, 0.0, 1.0, BoundaryKind::Periodic, |x| (theta_lattice * x).cos())?;
    let mut im = Field1D::from_fn(len, 0.0, 1.0, BoundaryKind::Periodic, |x| (theta_lattice * x).sin())?;
    let p = StepParams::new(r, eta);
    scheme.step(&mut re, p)?;
    scheme.step(&mut im, p)?;
    let j = len / 2;
    let out = Complex64::new(re.values()[j], im.values()[j]);
    Ok(AmplificationSample::from_g(theta, out * Complex64::from_polar(1.0, -theta_lattice * j as f64)))
}

/// D2-family symmetric factor `g1A g1B` from the rational form alone, with
/// `gamma(r/2)`; accepts negative `r`.
pub fn d2_rational_factor(variant: DiffusionVariant, r: f64, theta: f64) -> f64 {
    let gamma = diffusion_gamma(variant, 0.5 * r);
    let b = 0.5 * (1.0 - gamma);
    let u = PairUpdate { alpha: 0.5 * (1.0 + gamma), beta: b, lambda: b };
    (sweep_factor(&u, SweepDirection::Ascending, theta) * sweep_factor(&u, SweepDirection::Descending, theta)).re
}

/// Sample points for small-theta series extraction.
pub const EXPANSION_THETAS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Fits `q(theta) = c0 + c2 theta^2 + c4 theta^4` through the three
/// expansion samples; returns `[c0, c2, c4]`.
pub fn even_series(q: impl Fn(f64) -> Result<f64>) -> Result<[f64; 3]> {
    let x: Vec<f64> = EXPANSION_THETAS.iter().map(|t| t * t).collect();
    let y: Vec<f64> = EXPANSION_THETAS.iter().map(|&t| q(t)).collect::<Result<_>>()?;
    // Newton divided differences, then expand to monomials
    let d01 = (y[1] - y[0]) / (x[1] - x[0]);
    let d12 = (y[2] - y[1]) / (x[2] - x[1]);
    let d012 = (d12 - d01) / (x[2] - x[0]);
    let c4 = d012;
    let c2 = d01 - d012 * (x[0] + x[1]);
    let c0 = y[0] - d01 * x[0] + d012 * x[0] * x[1];
    Ok([c0, c2, c4])
}

/// Leading coefficients of `Re h(theta) = c2 theta^2 + c4 theta^4 + ...`.
pub fn exponent_series(scheme: &Scheme, p: StepParams) -> Result<[f64; 3]> {
    let [c0, c2, c4] = even_series(|t| Ok((-scheme_factor(scheme, p, t)?.ln()).re / (t * t)))?;
    Ok([c0, c2, c4])
}

/// Leading coefficients of the phase `phi = c1 theta + c3 theta^3 + c5 theta^5`.
pub fn phase_series(scheme: &Scheme, eta: f64) -> Result<[f64; 3]> {
    even_series(|t| Ok(phase_angle(scheme, eta, t)? / t))
}
