//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symfd::coefficients::{
    advdiff_coeffs_rw, advection_coeffs, diffusion_coeffs, AdvDiffParams, AdvDiffVariant, AdvectionParams,
    AdvectionVariant, DiffusionParams, DiffusionVariant,
};
use symfd::composition::{
    forest_ruth, mpe_weights, preset, preset_names, suzuki4, validate_order_conditions, yoshida6, Equation, StepParams,
    T4_WEIGHTS, T6_WEIGHTS, T8_WEIGHTS,
};
use symfd::experiments::{convergence_series, norm_history, ExperimentConfig, Observable};
use symfd::grid::{modified_norm, norm, ModifiedNormTag};
use symfd::oracle::{extrapolation_powers, richardson_plateau};
use symfd::spectral::{d2_rational_factor, exponent_series, numeric_amplification, phase_series, scheme_factor};
use symfd::sweep::{sweep_as_matrix, sweep_slice};
use symfd::{Error, Field1D, BoundaryKind, PairUpdate, SweepDirection};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fail_on_err<T>(r: symfd::Result<T>) -> Result<T, Outcome> {
    r.map_err(|e| outcome(false, format!("error: {e}")))
}

fn thetas(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| PI * k as f64 / (n - 1) as f64)
}

fn criterion_1() -> Result<Outcome, Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for (nx, target, tol) in [(800usize, 4.999438, 2e-5), (1600, 4.999997, 2e-6)] {
        let cfg = ExperimentConfig { nx, ..ExperimentConfig::advection_convergence() };
        let dts = [10.0 / 500.0, 10.0 / 640.0, 10.0 / 800.0, 10.0 / 1000.0];
        let (reference, series) = fail_on_err(convergence_series(&cfg, &dts, Observable::AbsWeightedMean))?;
        notes.push(format!("dx={}: semi-discrete {reference:.7}", 20.0 / nx as f64));
        for s in &series {
            let scheme = fail_on_err(preset(Equation::Advection, &s.scheme))?;
            let a = fail_on_err(richardson_plateau(&s.points, &extrapolation_powers(&scheme, 3)))?;
            pass &= (a - target).abs() <= tol;
            notes.push(format!("{} a={a:.7}", s.scheme));
        }
    }
    Ok(outcome(pass, notes.join(", ")))
}

fn criterion_2() -> Result<Outcome, Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();

    let cfg = ExperimentConfig {
        schemes: ["12xeuler", "d2s", "t4", "t6"].map(String::from).to_vec(),
        ..ExperimentConfig::diffusion_convergence()
    };
    let dts: Vec<f64> =
        [9, 12, 16, 20, 25, 32, 40, 50, 64, 80, 100, 128, 160, 200, 256, 320, 400].iter().map(|&m| 1.0 / f64::from(m)).collect();
    let (_, series) = fail_on_err(convergence_series(&cfg, &dts, Observable::AbsMoment))?;
    for (s, want) in series.iter().zip([1.0, 2.0, 4.0, 6.0]) {
        let n = s.order.as_ref().map_or(f64::NAN, |o| o.order);
        pass &= (n - want).abs() <= 0.3;
        notes.push(format!("{} n={n:.2}", s.scheme));
    }

    let cfg = ExperimentConfig {
        schemes: ["a2c", "fr", "s4", "y6", "rw1a"].map(String::from).to_vec(),
        ..ExperimentConfig::advection_convergence()
    };
    let dts: Vec<f64> = [50, 60, 70, 80, 100, 125, 160, 200, 250, 320, 400, 500, 640, 800, 1000]
        .iter()
        .map(|&m| 10.0 / f64::from(m))
        .collect();
    let (_, series) = fail_on_err(convergence_series(&cfg, &dts, Observable::AbsWeightedMean))?;
    for s in &series {
        let n = s.order.as_ref().map_or(f64::NAN, |o| o.order);
        let ok = match s.scheme.as_str() {
            "a2c" => n >= 2.0,
            "fr" | "s4" => n >= 4.0,
            "y6" => n >= 6.0,
            _ => (n - 1.5).abs() <= 0.3,
        };
        pass &= ok;
        notes.push(format!("{} n={n:.2}", s.scheme));
    }
    Ok(outcome(pass, notes.join(", ")))
}

const STABILITY_R: [f64; 8] = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0];

fn criterion_3() -> Result<Outcome, Outcome> {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for name in ["d2", "d2s", "d1a", "d1b", "d1as", "d1bs"] {
        let s = fail_on_err(preset(Equation::Diffusion, name))?;
        for r in STABILITY_R {
            for t in thetas(1024) {
                worst = worst.max(fail_on_err(scheme_factor(&s, StepParams::new(r, 0.0), t))?.norm());
                cases += 1;
            }
        }
    }
    let ad2c = fail_on_err(preset(Equation::AdvDiff, "ad2c"))?;
    for r in STABILITY_R {
        for eta in [0.0, 0.5, 0.9, 2.0] {
            for t in thetas(1024) {
                worst = worst.max(fail_on_err(scheme_factor(&ad2c, StepParams::new(r, eta), t))?.norm());
                cases += 1;
            }
        }
    }
    Ok(outcome(worst <= 1.0 + 1e-13, format!("max |g| = {worst:.16} over {cases} samples")))
}

fn criterion_4() -> Result<Outcome, Outcome> {
    let mut worst: f64 = 0.0;
    let (mut cases, mut skipped) = (0, Vec::new());
    for name in ["a1a", "a1b", "a1as", "a1bs", "rw1a", "rw1b", "a2", "a2s", "a2c", "rw2", "fr", "s4", "y6"] {
        let s = fail_on_err(preset(Equation::Advection, name))?;
        for eta in [0.1, 0.7, 2.0, 8.0] {
            match scheme_factor(&s, StepParams::new(0.0, eta), 0.5) {
                Err(Error::SpatialAmplification { .. }) => {
                    skipped.push(format!("{name}@{eta}"));
                    continue;
                }
                other => {
                    fail_on_err(other)?;
                }
            }
            for t in thetas(1024) {
                let g = fail_on_err(scheme_factor(&s, StepParams::new(0.0, eta), t))?;
                worst = worst.max((g.norm() - 1.0).abs());
                cases += 1;
            }
        }
    }
    Ok(outcome(
        worst <= 1e-12,
        format!("max ||g|-1| = {worst:.2e} over {cases} samples; not permitted (|s| >= 1): {}", skipped.join(" ")),
    ))
}

fn criterion_5() -> Result<Outcome, Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut dense_worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(3..=16);
        let p = PairUpdate { alpha: rng.gen_range(-1.0..1.0), beta: rng.gen_range(-1.0..1.0), lambda: rng.gen_range(-1.0..1.0) };
        let dir = if rng.gen_bool(0.5) { SweepDirection::Ascending } else { SweepDirection::Descending };
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut swept = u.clone();
        fail_on_err(sweep_slice(&mut swept, &p, dir))?;
        let dense = fail_on_err(sweep_as_matrix(&p, dir, n))?.mul_vec(&u);
        for (a, b) in swept.iter().zip(&dense) {
            dense_worst = dense_worst.max((a - b).abs());
        }
    }

    let n = 64;
    let samples = [(0.3, 0.4, 1), (0.3, 0.4, 23), (0.1, 0.7, 5), (0.1, 0.7, 32), (0.05, 0.9, 9), (0.05, 0.9, 27), (0.25, 0.2, 16), (0.25, 0.2, 31)];
    let mut spectral_worst: f64 = 0.0;
    let mut count = 0;
    for e in [Equation::Diffusion, Equation::Advection, Equation::AdvDiff] {
        for name in preset_names(e) {
            let scheme = fail_on_err(preset(e, name))?;
            for &(r, eta, m) in &samples {
                let theta = 2.0 * PI * f64::from(m) / n as f64;
                let analytic = fail_on_err(scheme_factor(&scheme, StepParams::new(r, eta), theta))?;
                let numeric = fail_on_err(numeric_amplification(&scheme, r, eta, theta, n))?;
                spectral_worst = spectral_worst.max((analytic - numeric.g).norm());
                count += 1;
            }
        }
    }
    Ok(outcome(
        dense_worst <= 1e-13 && spectral_worst <= 1e-12,
        format!("dense max dev {dense_worst:.2e} (100 cases); numeric vs analytic max dev {spectral_worst:.2e} ({count} preset samples)"),
    ))
}

fn criterion_6() -> Result<Outcome, Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let field = |rng: &mut ChaCha8Rng| {
        let v: Vec<f64> = (0..40).map(|_| rng.gen_range(0.0..1.0)).collect();
        Field1D::new(v, 0.1, 0.0, BoundaryKind::Periodic)
    };
    let dirs = [SweepDirection::Ascending, SweepDirection::Descending];
    let mut diff_worst: f64 = 0.0;
    for variant in [DiffusionVariant::Exponential, DiffusionVariant::SaulyevMatched] {
        for dir in dirs {
            for _ in 0..20 {
                let r = rng.gen_range(0.0..20.0);
                let p = fail_on_err(diffusion_coeffs(DiffusionParams { r, variant }, false))?;
                let mut f = fail_on_err(field(&mut rng))?;
                let before = norm(&f);
                fail_on_err(symfd::sweep(&mut f, &p, dir))?;
                diff_worst = diff_worst.max(((norm(&f) - before) / before).abs());
            }
        }
    }

    let mut adv_worst: f64 = 0.0;
    for variant in [AdvectionVariant::Trig, AdvectionVariant::Saulyev, AdvectionVariant::RobertsWeiss, AdvectionVariant::MatchedCN] {
        for dir in dirs {
            for eta in [0.1, 0.4, 0.66, 0.9, -0.5] {
                let p = fail_on_err(advection_coeffs(AdvectionParams { eta, variant }, dir, 1))?;
                let tag = match variant {
                    AdvectionVariant::RobertsWeiss => ModifiedNormTag::RobertsWeiss { eta, direction: dir },
                    _ => ModifiedNormTag::Advection { s: p.beta, c: p.alpha, direction: dir },
                };
                let mut f = fail_on_err(field(&mut rng))?;
                let before = fail_on_err(modified_norm(&f, tag))?;
                fail_on_err(symfd::sweep(&mut f, &p, dir))?;
                let after = fail_on_err(modified_norm(&f, tag))?;
                adv_worst = adv_worst.max(((after - before) / before).abs());
            }
        }
    }

    let mut rw_worst: f64 = 0.0;
    for r in [0.0, 0.066, 0.66, 1.33, 5.0] {
        for eta in [0.1, 0.5, 0.66, 0.9] {
            let params = AdvDiffParams { r, eta, variant: AdvDiffVariant::GeneralizedRW };
            let a = fail_on_err(advdiff_coeffs_rw(params, SweepDirection::Ascending))?;
            let b = fail_on_err(advdiff_coeffs_rw(params, SweepDirection::Descending))?;
            rw_worst = rw_worst.max((a.alpha / (1.0 - a.beta) - (1.0 + eta).sqrt()).abs());
            rw_worst = rw_worst.max((b.alpha / (1.0 - b.lambda) - (1.0 - eta).sqrt()).abs());
        }
    }
    Ok(outcome(
        diff_worst <= 1e-12 && adv_worst <= 1e-12 && rw_worst <= 1e-12,
        format!("diffusion sum {diff_worst:.2e}, advection modified norms {adv_worst:.2e}, RW factors {rw_worst:.2e}"),
    ))
}

fn criterion_7() -> Result<Outcome, Outcome> {
    let fr = validate_order_conditions(&forest_ruth(), 4);
    let s4 = validate_order_conditions(&suzuki4(), 4);
    let y6 = validate_order_conditions(&yoshida6(), 6);
    let fr_ok = fr.sum_minus_one.abs() <= 1e-12 && fr.sum_cubes.abs() <= 1e-12 && (fr.sum_fifths + 5.29145).abs() <= 1e-4;
    let s4_ok = (s4.sum_fifths + 0.074376).abs() <= 1e-5;
    let y6_ok = y6.sum_minus_one.abs() <= 1e-10 && y6.sum_cubes.abs() <= 1e-10 && y6.sum_fifths.abs() <= 1e-10;
    let mut mpe_ok = true;
    for table in [&T4_WEIGHTS[..], &T6_WEIGHTS[..], &T8_WEIGHTS[..]] {
        let ks: Vec<u32> = table.iter().map(|t| t.2).collect();
        let w = fail_on_err(mpe_weights(&ks))?;
        mpe_ok &= table.iter().zip(&w).all(|(&(n, d, _), c)| num_rational::Ratio::new(n, d) == *c);
    }
    Ok(outcome(
        fr_ok && s4_ok && y6_ok && mpe_ok,
        format!(
            "FR sum a^5 = {:.6}, S4 sum a^5 = {:.6}, Y6 residuals ({:.1e}, {:.1e}, {:.1e}), MPE rationals {}",
            fr.sum_fifths,
            s4.sum_fifths,
            y6.sum_minus_one,
            y6.sum_cubes,
            y6.sum_fifths,
            if mpe_ok { "exact" } else { "mismatch" }
        ),
    ))
}

fn criterion_8() -> Result<Outcome, Outcome> {
    let d2s = fail_on_err(preset(Equation::Diffusion, "d2s"))?;
    let mut h_dev: f64 = 0.0;
    for r in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let [c0, _, _] = fail_on_err(exponent_series(&d2s, StepParams::new(r, 0.0)))?;
        h_dev = h_dev.max((c0 - r).abs());
    }
    let a2c = fail_on_err(preset(Equation::Advection, "a2c"))?;
    let mut slope_dev: f64 = 0.0;
    for eta in [0.1, 0.7, 2.0, 8.0] {
        let [c1, _, _] = fail_on_err(phase_series(&a2c, eta))?;
        slope_dev = slope_dev.max((c1 - eta).abs());
    }
    let mut reversal: f64 = 0.0;
    let mut oddness: f64 = 0.0;
    for variant in [DiffusionVariant::Exponential, DiffusionVariant::SaulyevMatched] {
        for r in [0.1, 0.3, 0.6, 0.9] {
            for t in thetas(33).skip(1) {
                let (gp, gm) = (d2_rational_factor(variant, r, t), d2_rational_factor(variant, -r, t));
                reversal = reversal.max((gp * gm - 1.0).abs());
                if variant == DiffusionVariant::SaulyevMatched {
                    let h0 = 4.0 * (0.5 * t).sin().powi(2);
                    let err = (-gp.ln() - r * h0) + (-gm.ln() + r * h0);
                    oddness = oddness.max(err.abs());
                }
            }
        }
    }
    Ok(outcome(
        h_dev <= 1e-6 && slope_dev <= 1e-6 && reversal <= 1e-12 && oddness <= 1e-12,
        format!("D2S h/theta^2 - r {h_dev:.1e}, A2C slope - eta {slope_dev:.1e}, g(r)g(-r) - 1 {reversal:.1e}, oddness {oddness:.1e}"),
    ))
}

fn criterion_9() -> Result<Outcome, Outcome> {
    let cfg = ExperimentConfig::advdiff_norms();
    let dt = cfg.dt;
    let transit = |k: usize| ((10.0 * k as f64) / dt).round() as usize;
    let run = |name: &str| -> Result<Vec<(f64, f64)>, Outcome> {
        let cfg = ExperimentConfig { steps: Some(transit(4)), tfinal: None, ..cfg.clone() };
        norm_history(&cfg, &fail_on_err(preset(Equation::AdvDiff, name))?).map_err(|e| outcome(false, e.to_string()))
    };
    let mut pass = true;
    let mut notes = Vec::new();
    for name in ["rw1a", "rw1b"] {
        let h = run(name)?;
        let worst = (1..=4).map(|k| h[transit(k)].1.abs()).fold(0.0, f64::max);
        pass &= worst <= 1e-3;
        notes.push(format!("{name} max transit error {worst:.1e}"));
    }
    let ad2c = run("ad2c")?;
    let losses: Vec<f64> = (1..=4).map(|k| ad2c[transit(k)].1).collect();
    let monotone = losses[0] < 0.0 && losses.windows(2).all(|w| w[1] < w[0]);
    pass &= monotone;
    notes.push(format!("ad2c transits {}", losses.iter().map(|l| format!("{l:.2e}")).collect::<Vec<_>>().join(" ")));
    let end = transit(4);
    for name in ["a_d", "t4"] {
        let e = run(name)?[end].1;
        pass &= e.abs() < ad2c[end].1.abs();
        notes.push(format!("{name} {e:.2e}"));
    }
    Ok(outcome(pass, notes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome, Outcome>); 9] = [
        ("advection convergence plateau", criterion_1),
        ("observed orders", criterion_2),
        ("unconditional stability", criterion_3),
        ("advection unitarity", criterion_4),
        ("oracle equivalence", criterion_5),
        ("conservation", criterion_6),
        ("order conditions", criterion_7),
        ("matching and structure", criterion_8),
        ("norm dynamics", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check().unwrap_or_else(|e| e);
        if !o.pass {
            failures += 1;
        }
        println!("criterion {} ({name}): {} | {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
