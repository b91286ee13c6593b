//! Experiment drivers behind the command-line tool. Every command returns a
//! CSV document: `#` comment lines echoing all parameters, then a header
//! row and data rows with 17 significant digits.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use log::warn;

use crate::composition::{preset, Equation, Scheme, StepParams};
use crate::error::{Error, Result};
use crate::grid::{abs_moment, abs_weighted_mean, gaussian_profile, norm, sextic_profile, Field1D};
use crate::oracle::{
    exact_evolve, extrapolation_powers, fit_power_law, observed_order, richardson_plateau, OrderEstimate, PowerLawFit, MAX_ORACLE_POINTS,
};
use crate::spectral::{comparator_factor, exact_factor, phase_angle, scheme_factor, AmplificationSample, Comparator};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Gaussian,
    Sextic,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" => Ok(Profile::Gaussian),
            "sextic" => Ok(Profile::Sextic),
            other => Err(Error::Usage(format!("unknown profile '{other}' (expected gaussian or sextic)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// `<|x|>`
    AbsMoment,
    /// `<<x>>`
    AbsWeightedMean,
}

impl Observable {
    pub fn eval(self, f: &Field1D) -> Result<f64> {
        match self {
            Observable::AbsMoment => abs_moment(f),
            Observable::AbsWeightedMean => abs_weighted_mean(f),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Observable::AbsMoment => "abs_moment",
            Observable::AbsWeightedMean => "abs_weighted_mean",
        }
    }
}

impl FromStr for Observable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "abs_moment" => Ok(Observable::AbsMoment),
            "abs_weighted_mean" => Ok(Observable::AbsWeightedMean),
            other => Err(Error::Usage(format!("unknown observable '{other}' (expected abs_moment or abs_weighted_mean)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub equation: Equation,
    pub schemes: Vec<String>,
    /// Periodic grid of `nx` points `xmin + i dx`, `dx = (xmax - xmin) / nx`.
    pub nx: usize,
    pub xmin: f64,
    pub xmax: f64,
    pub dt: f64,
    pub steps: Option<usize>,
    pub tfinal: Option<f64>,
    pub dcoef: f64,
    pub vel: f64,
    pub profile: Profile,
    pub center: f64,
    pub sigma: f64,
}

pub const DEFAULT_SIGMA: f64 = 0.5;

impl ExperimentConfig {
    /// Gaussian diffusing on 120 points of [-6, 6] with D = 1/2, dt = 0.1, to t = 1.
    pub fn diffusion_gaussian() -> Self {
        Self {
            equation: Equation::Diffusion,
            schemes: vec!["d2s".into()],
            nx: 120,
            xmin: -6.0,
            xmax: 6.0,
            dt: 0.1,
            steps: Some(10),
            tfinal: None,
            dcoef: 0.5,
            vel: 0.0,
            profile: Profile::Gaussian,
            center: 0.0,
            sigma: DEFAULT_SIGMA,
        }
    }

    /// Diffusion convergence runs: same grid, t = 1.
    pub fn diffusion_convergence() -> Self {
        Self {
            schemes: vec!["12xeuler".into(), "d2s".into(), "t4".into(), "t6".into()],
            steps: None,
            tfinal: Some(1.0),
            ..Self::diffusion_gaussian()
        }
    }

    /// Sextic pulse five times around [-10, 10] at eta = 0.8.
    pub fn advection_transport() -> Self {
        Self {
            equation: Equation::Advection,
            schemes: vec!["a2c".into()],
            nx: 800,
            xmin: -10.0,
            xmax: 10.0,
            dt: 0.02,
            steps: Some(5000),
            tfinal: None,
            dcoef: 0.0,
            vel: 1.0,
            profile: Profile::Sextic,
            center: 0.0,
            sigma: DEFAULT_SIGMA,
        }
    }

    /// Sextic pulse carried from x = -5 to x = 5.
    pub fn advection_convergence() -> Self {
        Self {
            schemes: vec!["a2c".into(), "fr".into(), "s4".into(), "y6".into()],
            center: -5.0,
            steps: None,
            tfinal: Some(10.0),
            dt: 0.01,
            ..Self::advection_transport()
        }
    }

    /// Norm bookkeeping on [0, 10], dx = 0.05, dt = 0.033, D = 0.005, to t = 40.
    pub fn advdiff_norms() -> Self {
        Self {
            equation: Equation::AdvDiff,
            schemes: vec!["rw1a".into(), "rw1b".into(), "ad2c".into(), "a_d".into(), "t4".into()],
            nx: 200,
            xmin: 0.0,
            xmax: 10.0,
            dt: 0.033,
            steps: None,
            tfinal: Some(40.0),
            dcoef: 0.005,
            vel: 1.0,
            profile: Profile::Gaussian,
            center: 5.0,
            sigma: DEFAULT_SIGMA,
        }
    }

    /// Advection-diffusion of a Gaussian on [0, 10] with D = 0.1.
    pub fn advdiff_run() -> Self {
        Self { schemes: vec!["ad2c".into()], dcoef: 0.1, steps: Some(303), tfinal: None, ..Self::advdiff_norms() }
    }

    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / self.nx as f64
    }

    pub fn params(&self, dt: f64) -> StepParams {
        StepParams::from_physical(dt, self.dx(), self.dcoef, self.vel)
    }

    fn validate(&self) -> Result<()> {
        if !(self.xmax > self.xmin) || !self.xmin.is_finite() || !self.xmax.is_finite() {
            return Err(Error::Usage(format!("empty interval [{}, {}]", self.xmin, self.xmax)));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Usage(format!("dt must be positive, got {}", self.dt)));
        }
        if self.schemes.is_empty() {
            return Err(Error::Usage("no scheme given".into()));
        }
        if !(self.dcoef >= 0.0) || !self.vel.is_finite() {
            return Err(Error::Usage("diffusion coefficient must be nonnegative and velocity finite".into()));
        }
        Ok(())
    }

    pub fn initial_field(&self) -> Result<Field1D> {
        self.validate()?;
        match self.profile {
            Profile::Gaussian => gaussian_profile(self.nx, self.xmin, self.dx(), self.center, self.sigma),
            Profile::Sextic => sextic_profile(self.nx, self.xmin, self.dx(), self.center),
        }
    }

    /// Number of steps and the step actually used. With `tfinal` set the
    /// step count is the nearest integer and `dt` is adjusted to land on it.
    pub fn stepping(&self) -> Result<(usize, f64)> {
        self.validate()?;
        match (self.steps, self.tfinal) {
            (Some(n), _) => Ok((n, self.dt)),
            (None, Some(t)) => Ok(steps_for(t, self.dt)?),
            (None, None) => Err(Error::Usage("give either --steps or --tfinal".into())),
        }
    }

    pub fn resolve_schemes(&self) -> Result<Vec<(String, Scheme)>> {
        self.schemes.iter().map(|n| Ok((n.to_ascii_lowercase(), preset(self.equation, n)?))).collect()
    }

    fn header(&self, command: &str, steps: usize, dt: f64) -> String {
        let p = self.params(dt);
        let mut h = String::new();
        let _ = writeln!(h, "# symfd {command}");
        let _ = writeln!(h, "# equation={} scheme={}", self.equation, self.schemes.join(","));
        let _ = writeln!(
            h,
            "# nx={} xmin={} xmax={} dx={} dt={} steps={} t={}",
            self.nx,
            num(self.xmin),
            num(self.xmax),
            num(self.dx()),
            num(dt),
            steps,
            num(dt * steps as f64)
        );
        let _ = writeln!(h, "# D={} v={} r={} eta={}", num(self.dcoef), num(self.vel), num(p.r), num(p.eta));
        let profile = match self.profile {
            Profile::Gaussian => format!("gaussian center={} sigma={}", num(self.center), num(self.sigma)),
            Profile::Sextic => format!("sextic center={}", num(self.center)),
        };
        let _ = writeln!(h, "# profile={profile}");
        let _ = writeln!(h, "# deterministic: no random input, reruns are byte-identical");
        h
    }
}

/// `(steps, dt)` landing exactly on `t`.
pub fn steps_for(t: f64, dt: f64) -> Result<(usize, f64)> {
    if !(t.is_finite() && t >= 0.0 && dt > 0.0) {
        return Err(Error::Usage(format!("invalid final time {t} or step {dt}")));
    }
    let n = (t / dt).round().max(if t > 0.0 { 1.0 } else { 0.0 }) as usize;
    let adjusted = if n == 0 { dt } else { t / n as f64 };
    if (adjusted - dt).abs() > 1e-12 * dt {
        warn!("dt = {dt} does not divide t = {t}; using {n} steps of {adjusted}");
    }
    Ok((n, adjusted))
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn sample_columns(name: &str) -> String {
    format!("{name}_re,{name}_im,{name}_abs,{name}_phase")
}

fn sample_values(s: &AmplificationSample) -> String {
    format!("{},{},{},{}", num(s.g.re), num(s.g.im), num(s.magnitude), num(s.phase))
}

/// Theta grid `pi k / (n - 1)`; a single sample is `theta = 0`.
pub fn theta_grid(n: usize) -> Result<Vec<f64>> {
    match n {
        0 => Err(Error::Usage("need at least one theta sample".into())),
        1 => Ok(vec![0.0]),
        _ => Ok((0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect()),
    }
}

fn comparators_for(e: Equation) -> &'static [(&'static str, Comparator)] {
    match e {
        Equation::Diffusion => &[("euler", Comparator::Euler), ("cn", Comparator::CrankNicolson)],
        Equation::Advection => &[("lw", Comparator::LaxWendroff)],
        Equation::AdvDiff => &[],
    }
}

/// Amplification factors of the requested schemes plus the exact factor and
/// the classical comparators, at fixed `(r, eta)`.
pub fn cmd_ampfactor(cfg: &ExperimentConfig, r: f64, eta: f64, ntheta: usize) -> Result<String> {
    let schemes = cfg.resolve_schemes()?;
    let thetas = theta_grid(ntheta)?;
    let p = StepParams::new(r, eta);
    let mut columns: Vec<(String, Box<dyn Fn(f64) -> Result<AmplificationSample> + '_>)> = Vec::new();
    columns.push(("exact".into(), Box::new(move |t| Ok(AmplificationSample::from_g(t, exact_factor(cfg.equation, p, t))))));
    for (name, scheme) in &schemes {
        if name == "exact" {
            continue;
        }
        columns.push((name.clone(), Box::new(move |t| Ok(AmplificationSample::from_g(t, scheme_factor(scheme, p, t)?)))));
    }
    for &(name, c) in comparators_for(cfg.equation) {
        if schemes.iter().any(|(n, _)| n == name) {
            continue;
        }
        columns.push((name.into(), Box::new(move |t| Ok(AmplificationSample::from_g(t, comparator_factor(c, p, t))))));
    }

    let mut out = String::new();
    let _ = writeln!(out, "# symfd ampfactor");
    let _ = writeln!(out, "# equation={} scheme={}", cfg.equation, cfg.schemes.join(","));
    let _ = writeln!(out, "# r={} eta={} ntheta={}", num(r), num(eta), thetas.len());
    let _ = writeln!(out, "# deterministic: no random input, reruns are byte-identical");
    let names: Vec<String> = columns.iter().map(|(n, _)| sample_columns(n)).collect();
    let _ = writeln!(out, "theta,{}", names.join(","));
    for &t in &thetas {
        let row: Vec<String> = columns.iter().map(|(_, f)| f(t).map(|s| sample_values(&s))).collect::<Result<_>>()?;
        let _ = writeln!(out, "{},{}", num(t), row.join(","));
    }
    Ok(out)
}

/// Final profiles of every requested scheme next to the initial data and,
/// when the grid is small enough, the exact semi-discrete solution.
pub fn cmd_run(cfg: &ExperimentConfig) -> Result<String> {
    let schemes = cfg.resolve_schemes()?;
    let (steps, dt) = cfg.stepping()?;
    let p = cfg.params(dt);
    let initial = cfg.initial_field()?;
    let mut finals = Vec::with_capacity(schemes.len());
    for (_, scheme) in &schemes {
        let mut f = initial.clone();
        scheme.evolve(&mut f, p, steps)?;
        finals.push(f);
    }
    let exact = if initial.len() <= MAX_ORACLE_POINTS {
        Some(exact_evolve(&initial, cfg.dcoef, cfg.vel, dt * steps as f64)?)
    } else {
        None
    };

    let mut out = cfg.header("run", steps, dt);
    let _ = writeln!(out, "# norm initial={}", num(norm(&initial)));
    for ((name, _), f) in schemes.iter().zip(&finals) {
        let _ = write!(out, "# norm {name} final={}", num(norm(f)));
        if let Some(e) = &exact {
            let _ = write!(out, " max_abs_dev_vs_exact={}", num(f.max_abs_diff(e)));
        }
        out.push('\n');
    }
    let mut cols = vec!["x".to_string(), "u_initial".to_string()];
    cols.extend(schemes.iter().map(|(n, _)| format!("u_{n}")));
    if exact.is_some() {
        cols.push("u_exact".into());
    }
    let _ = writeln!(out, "{}", cols.join(","));
    for i in 0..initial.len() {
        let mut row = vec![num(initial.x(i)), num(initial.values()[i])];
        row.extend(finals.iter().map(|f| num(f.values()[i])));
        if let Some(e) = &exact {
            row.push(num(e.values()[i]));
        }
        let _ = writeln!(out, "{}", row.join(","));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSeries {
    pub scheme: String,
    /// `(dt actually used, observable)` in decreasing dt.
    pub points: Vec<(f64, f64)>,
    /// Converged value extrapolated from the smallest steps; see [`PLATEAU_TERMS`].
    pub plateau: Option<f64>,
    /// Fit of `a + b dt^n` to the values.
    pub fit: Option<PowerLawFit>,
    /// Order of `|value - reference|`.
    pub order: Option<OrderEstimate>,
}

/// Error terms eliminated when extrapolating the plateau.
pub const PLATEAU_TERMS: usize = 3;

/// Errors below this are treated as converged to roundoff and left out of order fits.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

/// Observable after `tfinal` for every scheme and step, plus the value for
/// the exact semi-discrete solution used as the error reference.
pub fn convergence_series(cfg: &ExperimentConfig, dts: &[f64], observable: Observable) -> Result<(f64, Vec<ConvergenceSeries>)> {
    let schemes = cfg.resolve_schemes()?;
    let tfinal = cfg.tfinal.ok_or_else(|| Error::Usage("converge needs --tfinal".into()))?;
    if dts.is_empty() {
        return Err(Error::Usage("converge needs at least one dt".into()));
    }
    let mut dts = dts.to_vec();
    dts.sort_by(|a, b| b.total_cmp(a));
    dts.dedup();
    let initial = cfg.initial_field()?;
    let reference = observable.eval(&exact_evolve(&initial, cfg.dcoef, cfg.vel, tfinal)?)?;
    let mut series = Vec::with_capacity(schemes.len());
    for (name, scheme) in &schemes {
        let mut points = Vec::with_capacity(dts.len());
        for &dt in &dts {
            let (steps, dt_used) = steps_for(tfinal, dt)?;
            if points.last().is_some_and(|&(d, _)| d == dt_used) {
                continue;
            }
            let mut f = initial.clone();
            scheme.evolve(&mut f, cfg.params(dt_used), steps)?;
            points.push((dt_used, observable.eval(&f)?));
        }
        let fit = fit_power_law(&points).ok();
        let plateau = match scheme.order() {
            u32::MAX => None,
            _ => {
                let terms = PLATEAU_TERMS.min(points.len().saturating_sub(1)).max(1);
                richardson_plateau(&points, &extrapolation_powers(scheme, terms)).ok()
            }
        };
        let errors: Vec<(f64, f64)> = points
            .iter()
            .map(|&(d, v)| (d, (v - reference).abs()))
            .filter(|&(_, e)| e > ROUNDOFF_FLOOR)
            .collect();
        let order = observed_order(&errors).ok();
        series.push(ConvergenceSeries { scheme: name.clone(), points, plateau, fit, order });
    }
    Ok((reference, series))
}

pub fn cmd_converge(cfg: &ExperimentConfig, dts: &[f64], observable: Observable) -> Result<String> {
    let (reference, series) = convergence_series(cfg, dts, observable)?;
    let tfinal = cfg.tfinal.unwrap_or_default();
    let steps = (tfinal / cfg.dt).round() as usize;
    let mut out = cfg.header("converge", steps, cfg.dt);
    let _ = writeln!(out, "# observable={} reference_semi_discrete_exact={}", observable.name(), num(reference));
    let names: Vec<&str> = series.iter().map(|s| s.scheme.as_str()).collect();
    let _ = writeln!(out, "dt,{}", names.join(","));
    let rows = series.iter().map(|s| s.points.len()).max().unwrap_or(0);
    for i in 0..rows {
        let dt = series.iter().find_map(|s| s.points.get(i)).map(|p| p.0).unwrap_or(f64::NAN);
        let vals: Vec<String> = series.iter().map(|s| s.points.get(i).map(|p| num(p.1)).unwrap_or_default()).collect();
        let _ = writeln!(out, "{},{}", num(dt), vals.join(","));
    }
    let _ = writeln!(
        out,
        "# fit,scheme,richardson_plateau,fit_plateau,fit_coefficient,fit_order,observed_order_vs_reference"
    );
    for s in &series {
        let (a, b, n) = s.fit.map(|f| (num(f.plateau), num(f.coefficient), num(f.order))).unwrap_or_default();
        let plateau = s.plateau.map(num).unwrap_or_default();
        let order = s.order.as_ref().map(|o| num(o.order)).unwrap_or_default();
        let _ = writeln!(out, "# fit,{},{plateau},{a},{b},{n},{order}", s.scheme);
    }
    Ok(out)
}

/// `(t, (norm(t) - norm(0)) / norm(0))` after every step.
pub fn norm_history(cfg: &ExperimentConfig, scheme: &Scheme) -> Result<Vec<(f64, f64)>> {
    let (steps, dt) = cfg.stepping()?;
    let p = cfg.params(dt);
    let mut f = cfg.initial_field()?;
    let n0 = norm(&f);
    if n0 == 0.0 {
        return Err(Error::Degenerate("initial profile has zero norm".into()));
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push((0.0, 0.0));
    for k in 1..=steps {
        scheme.step(&mut f, p)?;
        out.push((k as f64 * dt, (norm(&f) - n0) / n0));
    }
    Ok(out)
}

pub fn cmd_norms(cfg: &ExperimentConfig) -> Result<String> {
    let schemes = cfg.resolve_schemes()?;
    let (steps, dt) = cfg.stepping()?;
    let histories: Vec<Vec<(f64, f64)>> = schemes.iter().map(|(_, s)| norm_history(cfg, s)).collect::<Result<_>>()?;
    let mut out = cfg.header("norms", steps, dt);
    let names: Vec<&str> = schemes.iter().map(|(n, _)| n.as_str()).collect();
    let _ = writeln!(out, "t,{}", names.join(","));
    for k in 0..=steps {
        let vals: Vec<String> = histories.iter().map(|h| num(h[k].1)).collect();
        let _ = writeln!(out, "{},{}", num(histories[0][k].0), vals.join(","));
    }
    Ok(out)
}

/// Phase error `phi_scheme - eta sin(theta)` against the semi-discrete exact phase.
pub fn cmd_phase(cfg: &ExperimentConfig, eta: f64, ntheta: usize) -> Result<String> {
    if cfg.equation != Equation::Advection {
        return Err(Error::Usage("phase compares advection schemes; use --equation advection".into()));
    }
    let schemes = cfg.resolve_schemes()?;
    let thetas = theta_grid(ntheta)?;
    let mut out = String::new();
    let _ = writeln!(out, "# symfd phase");
    let _ = writeln!(out, "# equation={} scheme={}", cfg.equation, cfg.schemes.join(","));
    let _ = writeln!(out, "# eta={} ntheta={}", num(eta), thetas.len());
    let _ = writeln!(out, "# deterministic: no random input, reruns are byte-identical");
    let names: Vec<&str> = schemes.iter().map(|(n, _)| n.as_str()).collect();
    let _ = writeln!(out, "theta,{}", names.join(","));
    for &t in &thetas {
        let exact = eta * t.sin();
        let vals: Vec<String> =
            schemes.iter().map(|(_, s)| Ok(num(phase_angle(s, eta, t)? - exact))).collect::<Result<_>>()?;
        let _ = writeln!(out, "{},{}", num(t), vals.join(","));
    }
    Ok(out)
}
