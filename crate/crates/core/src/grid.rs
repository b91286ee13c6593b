//! Grid functions on a uniform 1D lattice.
//!
//! Samples are stored 0-based; sample `i` sits at `x0 + i * dx`. The first
//! stored sample is the one singled out by the periodic sweeps (it is
//! updated once at the start of an ascending sweep and again at the end),
//! so every boundary correction below refers to `values[0]`.

use crate::error::{Error, Result};
use crate::sweep::SweepDirection;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Periodic,
    /// First and last samples are held constant during a sweep.
    FixedEnds,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field1D {
    values: Vec<f64>,
    dx: f64,
    x0: f64,
    boundary: BoundaryKind,
}

pub const MIN_POINTS: usize = 3;

impl Field1D {
    pub fn new(values: Vec<f64>, dx: f64, x0: f64, boundary: BoundaryKind) -> Result<Self> {
        if values.len() < MIN_POINTS {
            return Err(Error::Size {
                got: values.len(),
                min: MIN_POINTS,
                max: usize::MAX,
            });
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::Parameter(format!("grid spacing must be finite and positive, got {dx}")));
        }
        if !x0.is_finite() {
            return Err(Error::Parameter(format!("origin must be finite, got {x0}")));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("sample {i} is not finite")));
        }
        Ok(Self { values, dx, x0, boundary })
    }

    /// Field of `n` zeros.
    pub fn zeros(n: usize, dx: f64, x0: f64, boundary: BoundaryKind) -> Result<Self> {
        Self::new(vec![0.0; n], dx, x0, boundary)
    }

    /// Builds a field by evaluating `profile` at every sample coordinate.
    pub fn from_fn(
        n: usize,
        x0: f64,
        dx: f64,
        boundary: BoundaryKind,
        profile: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let values = (0..n).map(|i| profile(x0 + i as f64 * dx)).collect();
        Self::new(values, dx, x0, boundary)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn x0(&self) -> f64 {
        self.x0
    }

    #[inline]
    pub fn boundary(&self) -> BoundaryKind {
        self.boundary
    }

    /// Coordinate of sample `i`.
    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.x(i))
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Same geometry, new samples.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::Parameter(format!(
                "expected {} samples, got {}",
                self.len(),
                values.len()
            )));
        }
        Self::new(values, self.dx, self.x0, self.boundary)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Field1D) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `self += weight * other`, sample by sample.
    pub fn add_scaled(&mut self, weight: f64, other: &Field1D) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += weight * b;
        }
    }

    pub fn scale(&mut self, weight: f64) {
        for a in &mut self.values {
            *a *= weight;
        }
    }
}

fn check_spacing(dx: f64) -> Result<()> {
    if dx.is_finite() && dx > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("grid spacing must be finite and positive, got {dx}")))
    }
}

/// `exp(-(x - center)^2 / (2 sigma^2))` on a periodic grid.
pub fn gaussian_profile(n: usize, x0: f64, dx: f64, center: f64, sigma: f64) -> Result<Field1D> {
    check_spacing(dx)?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
    }
    let two_var = 2.0 * sigma * sigma;
    Field1D::from_fn(n, x0, dx, BoundaryKind::Periodic, |x| {
        let d = x - center;
        (-d * d / two_var).exp()
    })
}

/// `exp(-((x - center) / 2)^6)`: a steep but smooth pulse on a periodic grid.
pub fn sextic_profile(n: usize, x0: f64, dx: f64, center: f64) -> Result<Field1D> {
    check_spacing(dx)?;
    if !center.is_finite() {
        return Err(Error::Parameter(format!("center must be finite, got {center}")));
    }
    Field1D::from_fn(n, x0, dx, BoundaryKind::Periodic, |x| {
        let d = 0.5 * (x - center);
        let d2 = d * d;
        (-(d2 * d2 * d2)).exp()
    })
}

/// Plain sample sum.
pub fn norm(f: &Field1D) -> f64 {
    f.values.iter().sum()
}

/// `sum |x_j| u_j / sum u_j`.
pub fn abs_moment(f: &Field1D) -> Result<f64> {
    let total = norm(f);
    if total == 0.0 {
        return Err(Error::Degenerate("zero norm in abs_moment".into()));
    }
    let weighted: f64 = f.values.iter().enumerate().map(|(i, u)| f.x(i).abs() * u).sum();
    Ok(weighted / total)
}

/// `sum x_j |u_j| / sum |u_j|`, the pulse position weighted by the absolute
/// value so oscillatory tails cannot cancel mass.
pub fn abs_weighted_mean(f: &Field1D) -> Result<f64> {
    let total: f64 = f.values.iter().map(|u| u.abs()).sum();
    if total == 0.0 {
        return Err(Error::Degenerate("all-zero field in abs_weighted_mean".into()));
    }
    let weighted: f64 = f.values.iter().enumerate().map(|(i, u)| f.x(i) * u.abs()).sum();
    Ok(weighted / total)
}

/// Which boundary-corrected norm to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModifiedNormTag {
    /// Rotation sweep with `c = sqrt(1 - s^2)`.
    Advection { s: f64, c: f64, direction: SweepDirection },
    /// Roberts-Weiss advection sweep at Courant number `eta`.
    RobertsWeiss { eta: f64, direction: SweepDirection },
    /// General advection-diffusion pair `(alpha, beta, lambda)`.
    AdvDiff { alpha: f64, beta: f64, lambda: f64, direction: SweepDirection },
}

impl ModifiedNormTag {
    /// Multiplier `m` such that the conserved quantity is `N + (m - 1) u_1`.
    pub fn boundary_factor(&self) -> Result<f64> {
        use SweepDirection::*;
        match *self {
            ModifiedNormTag::Advection { s, c, direction } => {
                let den = match direction {
                    Ascending => 1.0 - s,
                    Descending => 1.0 + s,
                };
                if den == 0.0 {
                    return Err(Error::SingularCoefficient(format!("1 -/+ s vanishes at s = {s}")));
                }
                Ok(c / den)
            }
            ModifiedNormTag::RobertsWeiss { eta, direction } => {
                let arg = match direction {
                    Ascending => 1.0 + eta,
                    Descending => 1.0 - eta,
                };
                if arg < 0.0 {
                    return Err(Error::SingularCoefficient(format!(
                        "Roberts-Weiss norm factor undefined at eta = {eta}"
                    )));
                }
                Ok(arg.sqrt())
            }
            ModifiedNormTag::AdvDiff { alpha, beta, lambda, direction } => {
                let den = match direction {
                    Ascending => 1.0 - beta,
                    Descending => 1.0 - lambda,
                };
                if den == 0.0 {
                    return Err(Error::SingularCoefficient("1 - beta (or 1 - lambda) vanishes".into()));
                }
                Ok(alpha / den)
            }
        }
    }
}

/// Norm corrected by the first-sample term that an asymmetric sweep
/// conserves exactly on a periodic grid.
pub fn modified_norm(f: &Field1D, tag: ModifiedNormTag) -> Result<f64> {
    let factor = tag.boundary_factor()?;
    Ok(norm(f) + (factor - 1.0) * f.values[0])
}
