//! Pair-update coefficients for every sweep family.
//!
//! All constructors take dimensionless step parameters: the diffusion number
//! `r = dt D / dx^2` and the Courant number `eta = v dt / dx`.
//!
//! Two families are defined directly in terms of the full step of a
//! symmetric (1A then 1B) pair and already contain the halving: the
//! Crank-Nicolson-matched advection coefficient `s~(eta)` and the matched
//! advection-diffusion coefficients. Everything else is a first-order sweep
//! coefficient evaluated at whatever step the caller passes in.

use crate::error::{Error, Result};
use crate::sweep::{PairUpdate, SweepDirection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffusionVariant {
    /// `gamma = exp(-2r)`, the exact exponential of one pair operator.
    Exponential,
    /// `gamma = (1 - r) / (1 + r)`, Saul'yev's coefficient.
    SaulyevMatched,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionParams {
    pub r: f64,
    pub variant: DiffusionVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdvectionVariant {
    /// `s = sin(eta / 2)`
    Trig,
    /// `s = eta / 2`
    Saulyev,
    /// `s = eta / (2 + eta)` ascending, `eta / (2 - eta)` descending.
    RobertsWeiss,
    /// `2 s / (1 - s^2) = eta / 2`; the symmetric pair reproduces the
    /// Crank-Nicolson factor.
    MatchedCN,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvectionParams {
    pub eta: f64,
    pub variant: AdvectionVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdvDiffVariant {
    /// Exact exponential of the combined pair operator.
    SplitDerived,
    /// Norm-preserving first-order sweeps matched to first and second order in theta.
    GeneralizedRW,
    /// Second-order symmetric pair matched to the exact exponent (AD2C).
    MatchedAD2C,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvDiffParams {
    pub r: f64,
    pub eta: f64,
    pub variant: AdvDiffVariant,
}

const SERIES_SWITCH: f64 = 1e-4;

fn check_r(r: f64) -> Result<()> {
    if !r.is_finite() {
        return Err(Error::Parameter(format!("diffusion number must be finite, got {r}")));
    }
    if r < 0.0 {
        return Err(Error::Stability(format!(
            "negative diffusion number r = {r}: every nonzero mode grows for negative time steps"
        )));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<()> {
    if eta.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("Courant number must be finite, got {eta}")))
    }
}

/// Determinant `gamma(r)` of a diffusion pair. No sign check: the rational
/// forms are also evaluated at negative `r` for reversal identities.
pub fn diffusion_gamma(variant: DiffusionVariant, r: f64) -> f64 {
    match variant {
        DiffusionVariant::Exponential => (-2.0 * r).exp(),
        DiffusionVariant::SaulyevMatched => (1.0 - r) / (1.0 + r),
    }
}

pub(crate) fn diffusion_pair_unchecked(variant: DiffusionVariant, r: f64) -> Result<PairUpdate> {
    let g = diffusion_gamma(variant, r);
    PairUpdate::new(0.5 * (1.0 + g), 0.5 * (1.0 - g), 0.5 * (1.0 - g))
}

/// `alpha = (1 + gamma) / 2`, `beta = lambda = (1 - gamma) / 2` with gamma
/// evaluated at `r` or, for the halves of a symmetric step, at `r / 2`.
pub fn diffusion_coeffs(p: DiffusionParams, half: bool) -> Result<PairUpdate> {
    check_r(p.r)?;
    let r = if half { 0.5 * p.r } else { p.r };
    diffusion_pair_unchecked(p.variant, r)
}

/// Solution of `2 s / (1 - s^2) = eta / 2`, i.e. `(2/eta)(sqrt(1 + eta^2/4) - 1)`,
/// evaluated without cancellation. Odd in `eta`, always `|s| < 1`.
pub fn matched_cn_s(eta: f64) -> f64 {
    if eta.abs() < SERIES_SWITCH {
        let e2 = eta * eta;
        eta * (0.25 - e2 / 64.0 + e2 * e2 / 512.0)
    } else {
        eta / (2.0 * ((1.0 + 0.25 * eta * eta).sqrt() + 1.0))
    }
}

/// Rotation parameter `s` for an advection sweep at effective Courant number `eta`.
pub fn advection_s(variant: AdvectionVariant, dir: SweepDirection, eta: f64) -> f64 {
    match variant {
        AdvectionVariant::Trig => (0.5 * eta).sin(),
        AdvectionVariant::Saulyev => 0.5 * eta,
        AdvectionVariant::RobertsWeiss => match dir {
            SweepDirection::Ascending => eta / (2.0 + eta),
            SweepDirection::Descending => eta / (2.0 - eta),
        },
        AdvectionVariant::MatchedCN => matched_cn_s(eta),
    }
}

pub(crate) fn rotation_pair(s: f64, pathological_at_one: bool) -> Result<PairUpdate> {
    if !s.is_finite() || s.abs() >= 1.0 {
        return Err(Error::SpatialAmplification {
            s,
            pathological: pathological_at_one && s.abs() == 1.0,
        });
    }
    PairUpdate::new((1.0 - s * s).sqrt(), s, -s)
}

/// `alpha = c`, `beta = s`, `lambda = -s` at `eta' = eta / half_divisor`.
pub fn advection_coeffs(p: AdvectionParams, dir: SweepDirection, half_divisor: u32) -> Result<PairUpdate> {
    check_eta(p.eta)?;
    if half_divisor == 0 {
        return Err(Error::Parameter("half_divisor must be at least 1".into()));
    }
    let eta = p.eta / f64::from(half_divisor);
    if p.variant == AdvectionVariant::RobertsWeiss && dir == SweepDirection::Descending && eta >= 1.0 {
        // s = eta / (2 - eta) >= 1 from here on
        return Err(Error::SpatialAmplification {
            s: advection_s(p.variant, dir, eta),
            pathological: eta == 1.0,
        });
    }
    let s = advection_s(p.variant, dir, eta);
    rotation_pair(s, p.variant == AdvectionVariant::Saulyev)
}

/// Returns `(cosh psi, sinh(psi)/psi)` given `psi^2`, continuing to
/// `(cos |psi|, sin|psi|/|psi|)` when `psi^2 < 0`.
fn cosh_sinhc(psi_sq: f64) -> (f64, f64) {
    let a = psi_sq.abs().sqrt();
    if a < SERIES_SWITCH {
        let x = psi_sq;
        (1.0 + x / 2.0 + x * x / 24.0, 1.0 + x / 6.0 + x * x / 120.0)
    } else if psi_sq >= 0.0 {
        (a.cosh(), a.sinh() / a)
    } else {
        (a.cos(), a.sin() / a)
    }
}

pub(crate) fn advdiff_split_unchecked(r: f64, eta: f64) -> Result<PairUpdate> {
    let half_eta = 0.5 * eta;
    let (ch, shc) = cosh_sinhc(r * r - half_eta * half_eta);
    let damp = (-r).exp();
    PairUpdate::new(damp * ch, damp * (r + half_eta) * shc, damp * (r - half_eta) * shc)
}

fn expect_variant(p: &AdvDiffParams, want: AdvDiffVariant) -> Result<()> {
    if p.variant == want {
        Ok(())
    } else {
        Err(Error::Parameter(format!("expected {want:?} parameters, got {:?}", p.variant)))
    }
}

/// Exact exponential of one combined advection-diffusion pair operator.
/// Its determinant is `exp(-2r)` but `beta + gamma + lambda != 1`, so the
/// Saul'yev form does not conserve the norm.
pub fn advdiff_coeffs_split(p: AdvDiffParams) -> Result<PairUpdate> {
    expect_variant(&p, AdvDiffVariant::SplitDerived)?;
    check_r(p.r)?;
    check_eta(p.eta)?;
    advdiff_split_unchecked(p.r, p.eta)
}

fn alpha_from_det(gamma: f64, beta: f64, lambda: f64) -> Result<PairUpdate> {
    let a2 = gamma + beta * lambda;
    if !(a2 >= 0.0) {
        return Err(Error::InvalidCoefficient(format!(
            "gamma + beta*lambda = {a2} < 0, no real alpha"
        )));
    }
    PairUpdate::new(a2.sqrt(), beta, lambda)
}

pub(crate) fn advdiff_rw_unchecked(r: f64, eta: f64, dir: SweepDirection) -> Result<PairUpdate> {
    let (wden, beta_of) = match dir {
        SweepDirection::Ascending => (2.0 + eta * (3.0 + eta), 2.0 + eta),
        SweepDirection::Descending => (2.0 - eta * (3.0 - eta), 2.0 - eta),
    };
    if !(wden > 0.0) || beta_of == 0.0 {
        return Err(Error::Parameter(format!(
            "generalized Roberts-Weiss {dir:?} sweep undefined at eta = {eta}"
        )));
    }
    let w = 2.0 / wden;
    let gamma = (1.0 - w * r) / (1.0 + w * r);
    let beta = match dir {
        SweepDirection::Ascending => (1.0 - gamma + eta) / beta_of,
        SweepDirection::Descending => (1.0 - gamma + gamma * eta) / beta_of,
    };
    alpha_from_det(gamma, beta, 1.0 - gamma - beta)
}

/// Generalized Roberts-Weiss sweep: `beta + gamma + lambda = 1` and the
/// first two orders of the exact exponent matched for the given direction.
pub fn advdiff_coeffs_rw(p: AdvDiffParams, dir: SweepDirection) -> Result<PairUpdate> {
    expect_variant(&p, AdvDiffVariant::GeneralizedRW)?;
    check_r(p.r)?;
    check_eta(p.eta)?;
    advdiff_rw_unchecked(p.r, p.eta, dir)
}

pub(crate) fn advdiff_ad2c_unchecked(r: f64, eta: f64) -> Result<PairUpdate> {
    let s = matched_cn_s(eta);
    let s2 = s * s;
    let w = (1.0 - s2) * (1.0 - s2) / (1.0 + 3.0 * s2);
    let x = 0.5 * w * r;
    let gamma = (1.0 - x) / (1.0 + x);
    let beta = 0.5 * (1.0 - gamma) + 0.5 * (1.0 + gamma) * s;
    let lambda = 0.5 * (1.0 - gamma) - 0.5 * (1.0 + gamma) * s;
    alpha_from_det(gamma, beta, lambda)
}

/// AD2C coefficients used by both halves of the symmetric step at `(r, eta)`.
/// With `half` the formula is evaluated at `(r/2, eta/2)` instead.
pub fn advdiff_coeffs_ad2c(p: AdvDiffParams, half: bool) -> Result<PairUpdate> {
    expect_variant(&p, AdvDiffVariant::MatchedAD2C)?;
    check_r(p.r)?;
    check_eta(p.eta)?;
    let (r, eta) = if half { (0.5 * p.r, 0.5 * p.eta) } else { (p.r, p.eta) };
    advdiff_ad2c_unchecked(r, eta)
}
