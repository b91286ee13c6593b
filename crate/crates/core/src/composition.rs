//! Time steppers assembled from sweeps.
//!
//! The second-order building block `T2(dt)` is an ascending sweep over half
//! a step followed by a descending sweep over the other half. Higher orders
//! come either from a single product `prod_i T2(a_i dt)` (order conditions
//! `sum a = 1`, `sum a^3 = 0`, `sum a^5 = 0`) or from a multi-product
//! expansion `sum_k c_k T2(dt/k)^k`, which keeps every substep positive and
//! is therefore the only route to high order for diffusion.

use std::fmt;
use std::str::FromStr;

use log::warn;
use num_rational::Ratio;

use crate::coefficients::{
    advdiff_ad2c_unchecked, advdiff_rw_unchecked, advdiff_split_unchecked, advection_coeffs,
    diffusion_pair_unchecked, AdvDiffVariant, AdvectionParams, AdvectionVariant, DiffusionVariant,
};
use crate::error::{Error, Result};
use crate::grid::Field1D;
use crate::oracle;
use crate::sweep::{sweep, PairUpdate, SweepDirection};

/// Dimensionless parameters of one time step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepParams {
    /// Diffusion number `dt D / dx^2`.
    pub r: f64,
    /// Courant number `v dt / dx`.
    pub eta: f64,
}

impl StepParams {
    pub fn new(r: f64, eta: f64) -> Self {
        Self { r, eta }
    }

    pub fn from_physical(dt: f64, dx: f64, diffusion: f64, velocity: f64) -> Self {
        Self { r: dt * diffusion / (dx * dx), eta: velocity * dt / dx }
    }

    /// Parameters of a substep `a * dt`.
    pub fn scaled(self, a: f64) -> Self {
        Self { r: a * self.r, eta: a * self.eta }
    }

    pub fn diffusion_part(self) -> Self {
        Self { r: self.r, eta: 0.0 }
    }

    pub fn advection_part(self) -> Self {
        Self { r: 0.0, eta: self.eta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equation {
    Diffusion,
    Advection,
    AdvDiff,
}

impl FromStr for Equation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "diffusion" => Ok(Equation::Diffusion),
            "advection" => Ok(Equation::Advection),
            "advdiff" | "advection-diffusion" => Ok(Equation::AdvDiff),
            other => Err(Error::Usage(format!(
                "unknown equation '{other}' (expected diffusion, advection or advdiff)"
            ))),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Diffusion => "diffusion",
            Equation::Advection => "advection",
            Equation::AdvDiff => "advdiff",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Diffusion(DiffusionVariant),
    Advection(AdvectionVariant),
    AdvDiff(AdvDiffVariant),
}

impl Variant {
    pub fn equation(&self) -> Equation {
        match self {
            Variant::Diffusion(_) => Equation::Diffusion,
            Variant::Advection(_) => Equation::Advection,
            Variant::AdvDiff(_) => Equation::AdvDiff,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseStep {
    Sweep1A,
    Sweep1B,
    T2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpeTerm {
    pub weight: f64,
    pub substeps: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompositionPlan {
    None,
    SingleProduct(Vec<f64>),
    MultiProduct(Vec<MpeTerm>),
}

const PLAN_SUM_TOL: f64 = 1e-12;

/// Equation, coefficient family, base step and composition plan.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSpec {
    equation: Equation,
    variant: Variant,
    base: BaseStep,
    plan: CompositionPlan,
    /// Negative substeps allowed through to the coefficient constructors.
    negative_substeps: bool,
}

impl SchemeSpec {
    pub fn new(equation: Equation, variant: Variant, base: BaseStep, plan: CompositionPlan) -> Result<Self> {
        if variant.equation() != equation {
            return Err(Error::Parameter(format!("{variant:?} coefficients do not solve the {equation} equation")));
        }
        if plan != CompositionPlan::None && base != BaseStep::T2 {
            return Err(Error::Parameter("composition plans require the symmetric T2 base".into()));
        }
        let mut negative_substeps = false;
        match &plan {
            CompositionPlan::None => {}
            CompositionPlan::SingleProduct(a) => {
                if a.is_empty() || a.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Parameter("single-product plan needs finite coefficients".into()));
                }
                let sum: f64 = a.iter().sum();
                if (sum - 1.0).abs() > PLAN_SUM_TOL {
                    return Err(Error::Parameter(format!("single-product coefficients sum to {sum}, not 1")));
                }
                if a.iter().any(|&x| x < 0.0) {
                    match equation {
                        Equation::Diffusion => {
                            return Err(Error::Stability(
                                "diffusion substeps with negative coefficients are unconditionally unstable".into(),
                            ))
                        }
                        Equation::AdvDiff => {
                            warn!("advection-diffusion composition with negative substeps; stable only for small r");
                            negative_substeps = true;
                        }
                        Equation::Advection => {}
                    }
                }
            }
            CompositionPlan::MultiProduct(terms) => {
                if terms.is_empty() || terms.iter().any(|t| t.substeps == 0 || !t.weight.is_finite()) {
                    return Err(Error::Parameter("multi-product plan needs terms with k >= 1".into()));
                }
                let sum: f64 = terms.iter().map(|t| t.weight).sum();
                if (sum - 1.0).abs() > PLAN_SUM_TOL {
                    return Err(Error::Parameter(format!("multi-product weights sum to {sum}, not 1")));
                }
            }
        }
        Ok(Self { equation, variant, base, plan, negative_substeps })
    }

    pub fn simple(variant: Variant, base: BaseStep) -> Result<Self> {
        Self::new(variant.equation(), variant, base, CompositionPlan::None)
    }

    pub fn equation(&self) -> Equation {
        self.equation
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn base(&self) -> BaseStep {
        self.base
    }

    pub fn plan(&self) -> &CompositionPlan {
        &self.plan
    }

    /// Same coefficients, no composition.
    pub fn base_spec(&self) -> SchemeSpec {
        SchemeSpec { plan: CompositionPlan::None, negative_substeps: false, ..self.clone() }
    }

    fn check_params(&self, p: StepParams) -> Result<()> {
        if !(p.r.is_finite() && p.eta.is_finite()) {
            return Err(Error::Parameter(format!("non-finite step parameters {p:?}")));
        }
        let uses_r = self.equation != Equation::Advection;
        if uses_r && p.r < 0.0 && !self.negative_substeps {
            return Err(Error::Stability(format!("negative diffusion number r = {}", p.r)));
        }
        Ok(())
    }

    fn first_order(&self, dir: SweepDirection, p: StepParams) -> Result<PairUpdate> {
        let u = self.first_order_unchecked(dir, p)?;
        if p.r < 0.0 && (u.beta.abs() >= 1.0 || u.lambda.abs() >= 1.0) {
            // negative substeps grow along the sweep once a coupling reaches one
            return Err(Error::SpatialAmplification { s: u.beta.abs().max(u.lambda.abs()), pathological: false });
        }
        Ok(u)
    }

    fn first_order_unchecked(&self, dir: SweepDirection, p: StepParams) -> Result<PairUpdate> {
        match self.variant {
            Variant::Diffusion(v) => diffusion_pair_unchecked(v, p.r),
            Variant::Advection(v) => advection_coeffs(AdvectionParams { eta: p.eta, variant: v }, dir, 1),
            Variant::AdvDiff(AdvDiffVariant::SplitDerived) => advdiff_split_unchecked(p.r, p.eta),
            Variant::AdvDiff(AdvDiffVariant::GeneralizedRW) => advdiff_rw_unchecked(p.r, p.eta, dir),
            Variant::AdvDiff(AdvDiffVariant::MatchedAD2C) => advdiff_ad2c_unchecked(p.r, p.eta),
        }
    }

    fn t2_halves(&self, p: StepParams) -> Result<(PairUpdate, PairUpdate)> {
        use SweepDirection::*;
        let half = p.scaled(0.5);
        match self.variant {
            // these coefficients are defined per symmetric pair at the full step
            Variant::Advection(AdvectionVariant::MatchedCN) | Variant::AdvDiff(AdvDiffVariant::MatchedAD2C) => {
                let u = self.first_order(Ascending, p)?;
                Ok((u, u))
            }
            _ => Ok((self.first_order(Ascending, half)?, self.first_order(Descending, half)?)),
        }
    }

    /// The sweeps making up one base step, in application order.
    pub fn sweeps(&self, p: StepParams) -> Result<Vec<(PairUpdate, SweepDirection)>> {
        self.check_params(p)?;
        Ok(match self.base {
            BaseStep::Sweep1A => vec![(self.first_order(SweepDirection::Ascending, p)?, SweepDirection::Ascending)],
            BaseStep::Sweep1B => vec![(self.first_order(SweepDirection::Descending, p)?, SweepDirection::Descending)],
            BaseStep::T2 => {
                let (a, b) = self.t2_halves(p)?;
                vec![(a, SweepDirection::Ascending), (b, SweepDirection::Descending)]
            }
        })
    }

    fn apply_base(&self, f: &mut Field1D, p: StepParams) -> Result<()> {
        for (u, dir) in self.sweeps(p)? {
            sweep(f, &u, dir)?;
        }
        Ok(())
    }

    /// One full step according to the plan.
    pub fn step(&self, f: &mut Field1D, p: StepParams) -> Result<()> {
        match &self.plan {
            CompositionPlan::None => self.apply_base(f, p),
            CompositionPlan::SingleProduct(a) => {
                // rightmost factor acts first
                for &ai in a.iter().rev() {
                    self.apply_base(f, p.scaled(ai))?;
                }
                Ok(())
            }
            CompositionPlan::MultiProduct(terms) => {
                let input = f.clone();
                f.scale(0.0);
                for term in terms {
                    let mut copy = input.clone();
                    let sub = p.scaled(1.0 / f64::from(term.substeps));
                    for _ in 0..term.substeps {
                        self.apply_base(&mut copy, sub)?;
                    }
                    f.add_scaled(term.weight, &copy);
                }
                Ok(())
            }
        }
    }

    /// Nominal order in time.
    pub fn order(&self) -> u32 {
        match (&self.plan, self.base) {
            (_, BaseStep::Sweep1A | BaseStep::Sweep1B) => 1,
            (CompositionPlan::None, BaseStep::T2) => 2,
            (CompositionPlan::SingleProduct(a), _) => validate_order_conditions(a, 2).achieved_order(ORDER_DETECT_TOL),
            (CompositionPlan::MultiProduct(terms), _) => {
                let mut order = 2;
                for m in 1..16 {
                    let s: f64 = terms.iter().map(|t| t.weight * f64::from(t.substeps).powi(-2 * m)).sum();
                    if s.abs() > ORDER_DETECT_TOL {
                        break;
                    }
                    order += 2;
                }
                order
            }
        }
    }

    /// True when the step satisfies `T(-dt) T(dt) = 1`, so its error expands in even powers.
    pub fn is_time_symmetric(&self) -> bool {
        match (&self.plan, self.base) {
            (_, BaseStep::Sweep1A | BaseStep::Sweep1B) => false,
            (CompositionPlan::None, _) => true,
            (CompositionPlan::SingleProduct(a), _) => a.iter().zip(a.iter().rev()).all(|(x, y)| x == y),
            (CompositionPlan::MultiProduct(_), _) => false,
        }
    }
}

const ORDER_DETECT_TOL: f64 = 1e-10;

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parameter(msg.into()))
    }
}

/// One symmetric second-order step: ascending half-sweep, then descending.
pub fn step_t2(f: &mut Field1D, spec: &SchemeSpec, p: StepParams) -> Result<()> {
    require(spec.base == BaseStep::T2, "step_t2 needs a T2 base")?;
    spec.apply_base(f, p)
}

pub fn step_single_product(f: &mut Field1D, spec: &SchemeSpec, p: StepParams) -> Result<()> {
    require(matches!(spec.plan, CompositionPlan::SingleProduct(_)), "plan is not a single product")?;
    spec.step(f, p)
}

pub fn step_multi_product(f: &mut Field1D, spec: &SchemeSpec, p: StepParams) -> Result<()> {
    require(matches!(spec.plan, CompositionPlan::MultiProduct(_)), "plan is not a multi-product expansion")?;
    spec.step(f, p)
}

/// Diffusion step followed by advection step. Exact splitting for constant
/// coefficients on a periodic grid, where the two operators commute.
pub fn step_ad_sequential(f: &mut Field1D, advection: &SchemeSpec, diffusion: &SchemeSpec, p: StepParams) -> Result<()> {
    require(advection.equation == Equation::Advection, "A/D needs an advection scheme")?;
    require(diffusion.equation == Equation::Diffusion, "A/D needs a diffusion scheme")?;
    diffusion.step(f, p.diffusion_part())?;
    advection.step(f, p.advection_part())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderConditionReport {
    pub sum_minus_one: f64,
    pub sum_cubes: f64,
    pub sum_fifths: f64,
    pub target_order: u32,
    pub passed: bool,
}

impl OrderConditionReport {
    /// Highest even order whose conditions all hold within `tol`.
    pub fn achieved_order(&self, tol: f64) -> u32 {
        if self.sum_minus_one.abs() > tol {
            return 0;
        }
        if self.sum_cubes.abs() > tol {
            return 2;
        }
        if self.sum_fifths.abs() > tol {
            return 4;
        }
        6
    }
}

pub const ORDER_CONDITION_TOL: f64 = 1e-12;

pub fn validate_order_conditions(a: &[f64], target_order: u32) -> OrderConditionReport {
    let sum_minus_one = a.iter().sum::<f64>() - 1.0;
    let sum_cubes = a.iter().map(|x| x.powi(3)).sum();
    let sum_fifths = a.iter().map(|x| x.powi(5)).sum();
    let mut report = OrderConditionReport { sum_minus_one, sum_cubes, sum_fifths, target_order, passed: false };
    report.passed = report.achieved_order(ORDER_CONDITION_TOL) >= target_order;
    report
}

/// Forest-Ruth: `[a1, a0, a1]` with `a1 = 1/(2 - 2^(1/3))`.
pub fn forest_ruth() -> Vec<f64> {
    let b = 2.0_f64.cbrt();
    let a1 = 1.0 / (2.0 - b);
    vec![a1, -b * a1, a1]
}

/// Suzuki's five-stage fourth-order product.
pub fn suzuki4() -> Vec<f64> {
    let b = 4.0_f64.cbrt();
    let a1 = 1.0 / (4.0 - b);
    vec![a1, a1, -b * a1, a1, a1]
}

/// Yoshida's seven-stage sixth-order product.
pub fn yoshida6() -> Vec<f64> {
    let a1 = -1.17767998417887;
    let a2 = 0.235573213359357;
    let a3 = 0.784513610477560;
    let a0 = 1.0 - 2.0 * (a1 + a2 + a3);
    vec![a3, a2, a1, a0, a1, a2, a3]
}

/// `(numerator, denominator, k)` for the harmonic-sequence expansions.
pub const T4_WEIGHTS: [(i64, i64, u32); 2] = [(-1, 3, 1), (4, 3, 2)];
pub const T6_WEIGHTS: [(i64, i64, u32); 3] = [(1, 24, 1), (-16, 15, 2), (81, 40, 3)];
pub const T8_WEIGHTS: [(i64, i64, u32); 4] = [(-1, 360, 1), (16, 45, 2), (-729, 280, 3), (1024, 315, 4)];

/// Exact weights `c_i = prod_{j != i} k_i^2 / (k_i^2 - k_j^2)` for distinct substep counts.
pub fn mpe_weights(substeps: &[u32]) -> Result<Vec<Ratio<i64>>> {
    for (i, &ki) in substeps.iter().enumerate() {
        if ki == 0 || substeps[..i].contains(&ki) {
            return Err(Error::Parameter("substep counts must be distinct and positive".into()));
        }
    }
    Ok(substeps
        .iter()
        .map(|&ki| {
            let k2 = i64::from(ki) * i64::from(ki);
            substeps
                .iter()
                .filter(|&&kj| kj != ki)
                .fold(Ratio::from_integer(1), |acc, &kj| {
                    let j2 = i64::from(kj) * i64::from(kj);
                    acc * Ratio::new(k2, k2 - j2)
                })
        })
        .collect())
}

pub fn mpe_plan(weights: &[(i64, i64, u32)]) -> CompositionPlan {
    CompositionPlan::MultiProduct(
        weights
            .iter()
            .map(|&(n, d, k)| MpeTerm { weight: n as f64 / d as f64, substeps: k })
            .collect(),
    )
}

/// A complete time stepper.
#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    Split(SchemeSpec),
    /// Diffusion then advection in the same step.
    Sequential { advection: SchemeSpec, diffusion: SchemeSpec },
    /// Forward-time centered-space diffusion.
    Euler,
    /// Lax-Wendroff advection.
    LaxWendroff,
    /// Exact evolution of the semi-discrete system.
    Exact(Equation),
    /// `times` substeps of `dt / times`.
    Repeated { inner: Box<Scheme>, times: u32 },
}

impl Scheme {
    pub fn equation(&self) -> Equation {
        match self {
            Scheme::Split(s) => s.equation(),
            Scheme::Sequential { .. } => Equation::AdvDiff,
            Scheme::Euler => Equation::Diffusion,
            Scheme::LaxWendroff => Equation::Advection,
            Scheme::Exact(e) => *e,
            Scheme::Repeated { inner, .. } => inner.equation(),
        }
    }

    pub fn step(&self, f: &mut Field1D, p: StepParams) -> Result<()> {
        match self {
            Scheme::Split(spec) => spec.step(f, p),
            Scheme::Sequential { advection, diffusion } => step_ad_sequential(f, advection, diffusion, p),
            Scheme::Euler => euler_step(f, p.r),
            Scheme::LaxWendroff => lax_wendroff_step(f, p.eta),
            Scheme::Exact(e) => {
                *f = oracle::exact_evolve_params(f, restrict(*e, p))?;
                Ok(())
            }
            Scheme::Repeated { inner, times } => {
                let sub = p.scaled(1.0 / f64::from(*times));
                for _ in 0..*times {
                    inner.step(f, sub)?;
                }
                Ok(())
            }
        }
    }

    /// Runs `steps` steps.
    pub fn evolve(&self, f: &mut Field1D, p: StepParams, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.step(f, p)?;
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        match self {
            Scheme::Split(s) => s.order(),
            Scheme::Sequential { advection, diffusion } => advection.order().min(diffusion.order()),
            Scheme::Euler => 1,
            Scheme::LaxWendroff => 2,
            Scheme::Exact(_) => u32::MAX,
            Scheme::Repeated { inner, .. } => inner.order(),
        }
    }

    pub fn is_time_symmetric(&self) -> bool {
        match self {
            Scheme::Split(s) => s.is_time_symmetric(),
            Scheme::Sequential { advection, diffusion } => advection.is_time_symmetric() && diffusion.is_time_symmetric(),
            Scheme::Euler | Scheme::LaxWendroff => false,
            Scheme::Exact(_) => true,
            Scheme::Repeated { inner, .. } => inner.is_time_symmetric(),
        }
    }
}

/// Zeroes the parameter an equation does not use.
pub fn restrict(e: Equation, p: StepParams) -> StepParams {
    match e {
        Equation::Diffusion => p.diffusion_part(),
        Equation::Advection => p.advection_part(),
        Equation::AdvDiff => p,
    }
}

fn euler_step(f: &mut Field1D, r: f64) -> Result<()> {
    let u = f.values().to_vec();
    let n = u.len();
    for (j, out) in f.values_mut().iter_mut().enumerate() {
        let left = u[(j + n - 1) % n];
        let right = u[(j + 1) % n];
        *out = u[j] + r * (right - 2.0 * u[j] + left);
    }
    Ok(())
}

fn lax_wendroff_step(f: &mut Field1D, eta: f64) -> Result<()> {
    let u = f.values().to_vec();
    let n = u.len();
    for (j, out) in f.values_mut().iter_mut().enumerate() {
        let left = u[(j + n - 1) % n];
        let right = u[(j + 1) % n];
        *out = u[j] - 0.5 * eta * (right - left) + 0.5 * eta * eta * (right - 2.0 * u[j] + left);
    }
    Ok(())
}

fn split(variant: Variant, base: BaseStep) -> Result<Scheme> {
    Ok(Scheme::Split(SchemeSpec::simple(variant, base)?))
}

fn composed(variant: Variant, plan: CompositionPlan) -> Result<Scheme> {
    Ok(Scheme::Split(SchemeSpec::new(variant.equation(), variant, BaseStep::T2, plan)?))
}

pub const DIFFUSION_PRESETS: &[&str] = &["euler", "d1a", "d1b", "d1as", "d1bs", "d2", "d2s", "t4", "t6", "t8", "exact"];
pub const ADVECTION_PRESETS: &[&str] = &[
    "lw", "a1a", "a1b", "a1as", "a1bs", "rw1a", "rw1b", "a2", "a2s", "a2c", "rw2", "fr", "s4", "y6", "t4", "exact",
];
pub const ADVDIFF_PRESETS: &[&str] =
    &["rw1a", "rw1b", "rw2", "split1a", "split1b", "split2", "ad2c", "a_d", "t4", "fr", "exact"];

pub fn preset_names(e: Equation) -> &'static [&'static str] {
    match e {
        Equation::Diffusion => DIFFUSION_PRESETS,
        Equation::Advection => ADVECTION_PRESETS,
        Equation::AdvDiff => ADVDIFF_PRESETS,
    }
}

/// Looks up a named scheme. A `<n>x` prefix (e.g. `12xeuler`) runs the
/// scheme `n` times at `dt / n`.
pub fn preset(equation: Equation, name: &str) -> Result<Scheme> {
    let name = name.trim().to_ascii_lowercase();
    if let Some((count, rest)) = name.split_once('x') {
        if !count.is_empty() && count.chars().all(|c| c.is_ascii_digit()) {
            let times: u32 = count.parse().map_err(|_| Error::Usage(format!("bad repeat count in '{name}'")))?;
            if times == 0 {
                return Err(Error::Usage("repeat count must be positive".into()));
            }
            let inner = preset(equation, rest)?;
            return Ok(Scheme::Repeated { inner: Box::new(inner), times });
        }
    }

    use AdvectionVariant as A;
    use BaseStep::*;
    use DiffusionVariant as D;
    let unknown = || {
        Error::Usage(format!(
            "unknown {equation} scheme '{name}'; available: {}",
            preset_names(equation).join(", ")
        ))
    };
    let d2s = Variant::Diffusion(D::SaulyevMatched);
    let a2c = Variant::Advection(A::MatchedCN);
    let ad2c = Variant::AdvDiff(AdvDiffVariant::MatchedAD2C);
    match equation {
        Equation::Diffusion => match name.as_str() {
            "euler" => Ok(Scheme::Euler),
            "d1a" => split(Variant::Diffusion(D::Exponential), Sweep1A),
            "d1b" => split(Variant::Diffusion(D::Exponential), Sweep1B),
            "d1as" => split(d2s, Sweep1A),
            "d1bs" => split(d2s, Sweep1B),
            "d2" => split(Variant::Diffusion(D::Exponential), T2),
            "d2s" => split(d2s, T2),
            "t4" => composed(d2s, mpe_plan(&T4_WEIGHTS)),
            "t6" => composed(d2s, mpe_plan(&T6_WEIGHTS)),
            "t8" => composed(d2s, mpe_plan(&T8_WEIGHTS)),
            "exact" => Ok(Scheme::Exact(equation)),
            _ => Err(unknown()),
        },
        Equation::Advection => match name.as_str() {
            "lw" => Ok(Scheme::LaxWendroff),
            "a1a" => split(Variant::Advection(A::Trig), Sweep1A),
            "a1b" => split(Variant::Advection(A::Trig), Sweep1B),
            "a1as" => split(Variant::Advection(A::Saulyev), Sweep1A),
            "a1bs" => split(Variant::Advection(A::Saulyev), Sweep1B),
            "rw1a" => split(Variant::Advection(A::RobertsWeiss), Sweep1A),
            "rw1b" => split(Variant::Advection(A::RobertsWeiss), Sweep1B),
            "a2" => split(Variant::Advection(A::Trig), T2),
            "a2s" => split(Variant::Advection(A::Saulyev), T2),
            "a2c" => split(a2c, T2),
            "rw2" => split(Variant::Advection(A::RobertsWeiss), T2),
            "fr" => composed(a2c, CompositionPlan::SingleProduct(forest_ruth())),
            "s4" => composed(a2c, CompositionPlan::SingleProduct(suzuki4())),
            "y6" => composed(a2c, CompositionPlan::SingleProduct(yoshida6())),
            "t4" => composed(a2c, mpe_plan(&T4_WEIGHTS)),
            "exact" => Ok(Scheme::Exact(equation)),
            _ => Err(unknown()),
        },
        Equation::AdvDiff => match name.as_str() {
            "rw1a" => split(Variant::AdvDiff(AdvDiffVariant::GeneralizedRW), Sweep1A),
            "rw1b" => split(Variant::AdvDiff(AdvDiffVariant::GeneralizedRW), Sweep1B),
            "rw2" => split(Variant::AdvDiff(AdvDiffVariant::GeneralizedRW), T2),
            "split1a" => split(Variant::AdvDiff(AdvDiffVariant::SplitDerived), Sweep1A),
            "split1b" => split(Variant::AdvDiff(AdvDiffVariant::SplitDerived), Sweep1B),
            "split2" => split(Variant::AdvDiff(AdvDiffVariant::SplitDerived), T2),
            "ad2c" => split(ad2c, T2),
            "a_d" | "a/d" => Ok(Scheme::Sequential {
                advection: SchemeSpec::simple(a2c, T2)?,
                diffusion: SchemeSpec::simple(d2s, T2)?,
            }),
            "t4" => composed(ad2c, mpe_plan(&T4_WEIGHTS)),
            "fr" => composed(ad2c, CompositionPlan::SingleProduct(forest_ruth())),
            "exact" => Ok(Scheme::Exact(equation)),
            _ => Err(unknown()),
        },
    }
}
