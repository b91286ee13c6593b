//! Ground-truth references.
//!
//! On a periodic grid the semi-discrete diffusion and advection operators are
//! circulant, so their exponentials are diagonal in the discrete Fourier
//! basis. `exact_evolve` applies them by direct transform, which is what a
//! scheme's amplification factor should be compared against.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;

use crate::composition::{Scheme, StepParams};
use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, Field1D};

/// Eigenvalues of `D d2/dx2 + (-v d/dx)` discretized with centered differences.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpectrum {
    pub n: usize,
    pub eigenvalues: Vec<Complex64>,
}

impl CirculantSpectrum {
    /// `diffusion_rate = D / dx^2`, `advection_rate = v / dx`.
    pub fn new(n: usize, diffusion_rate: f64, advection_rate: f64) -> Self {
        let eigenvalues = (0..n)
            .map(|k| {
                let t = PI * k as f64 / n as f64;
                Complex64::new(-4.0 * diffusion_rate * t.sin().powi(2), -advection_rate * (2.0 * t).sin())
            })
            .collect();
        Self { n, eigenvalues }
    }

    pub fn for_field(f: &Field1D, diffusion: f64, velocity: f64) -> Self {
        let dx = f.dx();
        Self::new(f.len(), diffusion / (dx * dx), velocity / dx)
    }
}

struct Dft {
    twiddle: Vec<Complex64>,
}

impl Dft {
    fn new(n: usize) -> Self {
        Self { twiddle: (0..n).map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64)).collect() }
    }

    fn forward(&self, u: &[f64]) -> Vec<Complex64> {
        let n = u.len();
        (0..n)
            .map(|k| {
                let mut idx = 0;
                let mut acc = Complex64::new(0.0, 0.0);
                for &x in u {
                    acc += x * self.twiddle[idx].conj();
                    idx += k;
                    if idx >= n {
                        idx -= n;
                    }
                }
                acc
            })
            .collect()
    }

    fn inverse_real(&self, c: &[Complex64]) -> Vec<f64> {
        let n = c.len();
        (0..n)
            .map(|j| {
                let mut idx = 0;
                let mut acc = 0.0;
                for ck in c {
                    acc += (ck * self.twiddle[idx]).re;
                    idx += j;
                    if idx >= n {
                        idx -= n;
                    }
                }
                acc / n as f64
            })
            .collect()
    }
}

/// Largest grid accepted by the direct transform.
pub const MAX_ORACLE_POINTS: usize = 8192;

fn evolve_with(f: &Field1D, spectrum: &CirculantSpectrum, dt: f64) -> Result<Field1D> {
    if f.boundary() != BoundaryKind::Periodic {
        return Err(Error::BoundaryKind { expected: BoundaryKind::Periodic, got: f.boundary() });
    }
    if f.len() > MAX_ORACLE_POINTS {
        return Err(Error::Size { got: f.len(), min: crate::grid::MIN_POINTS, max: MAX_ORACLE_POINTS });
    }
    if !dt.is_finite() {
        return Err(Error::Parameter(format!("non-finite time step {dt}")));
    }
    if dt == 0.0 {
        return Ok(f.clone());
    }
    let dft = Dft::new(f.len());
    let mut c = dft.forward(f.values());
    for (ck, lk) in c.iter_mut().zip(&spectrum.eigenvalues) {
        *ck *= (dt * lk).exp();
    }
    f.with_values(dft.inverse_real(&c))
}

/// Exact solution of the semi-discrete equation after time `dt`.
pub fn exact_evolve(f: &Field1D, diffusion: f64, velocity: f64, dt: f64) -> Result<Field1D> {
    evolve_with(f, &CirculantSpectrum::for_field(f, diffusion, velocity), dt)
}

/// Same as [`exact_evolve`] with dimensionless parameters (`dt = 1`, `dx = 1`).
pub fn exact_evolve_params(f: &Field1D, p: StepParams) -> Result<Field1D> {
    evolve_with(f, &CirculantSpectrum::new(f.len(), p.r, p.eta), 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    /// Least-squares slope of `ln err` against `ln dt`.
    pub order: f64,
    /// Orders between consecutive retained points.
    pub pairwise: Vec<f64>,
    pub used: usize,
    pub dropped: usize,
}

/// Observed convergence order from `(dt, err)` pairs with `dt` strictly decreasing.
pub fn observed_order(points: &[(f64, f64)]) -> Result<OrderEstimate> {
    if points.windows(2).any(|w| !(w[1].0 < w[0].0)) || points.iter().any(|p| !(p.0 > 0.0)) {
        return Err(Error::Parameter("dt values must be positive and strictly decreasing".into()));
    }
    let kept: Vec<(f64, f64)> = points.iter().copied().filter(|&(_, e)| e > 0.0 && e.is_finite()).collect();
    let dropped = points.len() - kept.len();
    if dropped > 0 {
        warn!("dropped {dropped} nonpositive error values before fitting the order");
    }
    if kept.len() < 2 {
        return Err(Error::Degenerate(format!("need at least 2 positive errors, have {}", kept.len())));
    }
    let logs: Vec<(f64, f64)> = kept.iter().map(|&(d, e)| (d.ln(), e.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let pairwise = logs.windows(2).map(|w| (w[0].1 - w[1].1) / (w[0].0 - w[1].0)).collect();
    Ok(OrderEstimate { order: sxy / sxx, pairwise, used: kept.len(), dropped })
}

/// Converged value `a` of `value = a + sum_j b_j dt^{p_j}`, using the
/// `powers.len() + 1` smallest steps.
pub fn richardson_plateau(points: &[(f64, f64)], powers: &[f64]) -> Result<f64> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|a, b| a.0 == b.0);
    let m = powers.len() + 1;
    if powers.is_empty() || pts.len() < m || !(pts[0].0 > 0.0) {
        return Err(Error::Degenerate(format!("plateau needs {m} distinct positive steps")));
    }
    if powers.iter().any(|p| !(*p > 0.0 && p.is_finite())) {
        return Err(Error::Parameter(format!("invalid powers {powers:?}")));
    }
    // scale by the largest step used so the system stays well conditioned
    let scale = pts[m - 1].0;
    let mut a: Vec<Vec<f64>> = pts[..m]
        .iter()
        .map(|&(d, v)| {
            let mut row = vec![1.0];
            row.extend(powers.iter().map(|&p| (d / scale).powf(p)));
            row.push(v);
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).expect("nonempty");
        a.swap(col, pivot);
        if a[col][col] == 0.0 {
            return Err(Error::Degenerate("singular extrapolation system".into()));
        }
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            for k in col..=m {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let tail: f64 = (row + 1..m).map(|k| a[row][k] * x[k]).sum();
        x[row] = (a[row][m] - tail) / a[row][row];
    }
    Ok(x[0])
}

/// Error powers of a scheme: its order, then steps of 2 for time-symmetric
/// steps and 1 otherwise.
pub fn extrapolation_powers(scheme: &Scheme, count: usize) -> Vec<f64> {
    let p = f64::from(scheme.order());
    let inc = if scheme.is_time_symmetric() { 2.0 } else { 1.0 };
    (0..count).map(|j| p + inc * j as f64).collect()
}

/// Order of `|value - a|` with `a` from [`richardson_plateau`].
/// The points used for `a` come out near zero and are usually dropped.
pub fn order_about_plateau(points: &[(f64, f64)], powers: &[f64]) -> Result<(f64, OrderEstimate)> {
    let a = richardson_plateau(points, powers)?;
    let mut errs: Vec<(f64, f64)> = points.iter().map(|&(d, v)| (d, (v - a).abs())).collect();
    errs.sort_by(|x, y| y.0.total_cmp(&x.0));
    Ok((a, observed_order(&errs)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// Converged value `a`.
    pub plateau: f64,
    pub coefficient: f64,
    pub order: f64,
    pub rms_residual: f64,
}

fn linear_fit(points: &[(f64, f64)], n: f64) -> (f64, f64, f64) {
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.powf(n)).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| (x - mx) * (p.1 - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let a = my - b * mx;
    let sse = xs.iter().zip(points).map(|(x, p)| (a + b * x - p.1).powi(2)).sum();
    (a, b, sse)
}

const ORDER_SCAN: (f64, f64, f64) = (0.25, 12.0, 0.01);

/// Least-squares fit of `value = a + b dt^n` over `(dt, value)` pairs.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!("power-law fit needs at least 3 points, got {}", points.len())));
    }
    if points.iter().any(|p| !(p.0 > 0.0) || !p.1.is_finite()) {
        return Err(Error::Parameter("power-law fit needs positive dt and finite values".into()));
    }
    let (lo, hi, step) = ORDER_SCAN;
    let sse = |n: f64| linear_fit(points, n).2;
    let mut best = lo;
    let mut n = lo;
    while n <= hi {
        if sse(n) < sse(best) {
            best = n;
        }
        n += step;
    }
    // golden-section refinement around the scan minimum
    let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if sse(c) < sse(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let order = 0.5 * (a + b);
    let (plateau, coefficient, err) = linear_fit(points, order);
    Ok(PowerLawFit { plateau, coefficient, order, rms_residual: (err / points.len() as f64).sqrt() })
}

/// Richardson extrapolation over `levels` halvings of the step. Assumes the
/// error expands in powers `p, p+1, ...` (`p, p+2, ...` for time-symmetric steps).
pub fn richardson_reference(f: &Field1D, scheme: &Scheme, p: StepParams, levels: usize) -> Result<Field1D> {
    let order = scheme.order();
    if order == u32::MAX {
        return Err(Error::Parameter("exact evolution needs no extrapolation".into()));
    }
    let inc = if scheme.is_time_symmetric() { 2 } else { 1 };
    let mut table: Vec<Field1D> = Vec::with_capacity(levels + 1);
    for m in 0..=levels {
        let sub = 1usize << m;
        let mut u = f.clone();
        scheme.evolve(&mut u, p.scaled(1.0 / sub as f64), sub)?;
        // extrapolate the new row against the previous one
        let mut row = vec![u];
        for j in 1..=m {
            let q = order as i32 + inc * (j as i32 - 1);
            let factor = 1.0 / (2f64.powi(q) - 1.0);
            let mut next = row[j - 1].clone();
            next.add_scaled(factor, &row[j - 1]);
            next.add_scaled(-factor, &table[j - 1]);
            row.push(next);
        }
        table = row;
    }
    Ok(table.pop().expect("at least one level"))
}
