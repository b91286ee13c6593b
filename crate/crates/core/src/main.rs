use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use symfd::composition::Equation;
use symfd::experiments::{
    cmd_ampfactor, cmd_converge, cmd_norms, cmd_phase, cmd_run, ExperimentConfig, Observable, Profile,
};
use symfd::{Error, Result};

#[derive(Parser)]
#[command(name = "symfd", version, about = "Sweep-based explicit solvers for 1D diffusion, advection and advection-diffusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-mode amplification factors against exact and classical schemes
    Ampfactor {
        #[command(flatten)]
        common: Common,
        /// Diffusion number dt D / dx^2
        #[arg(long, default_value_t = 0.3)]
        r: f64,
        /// Courant number v dt / dx
        #[arg(long, default_value_t = 0.7)]
        eta: f64,
        #[arg(long, default_value_t = 181)]
        ntheta: usize,
    },
    /// Evolve a profile and print initial, final and exact semi-discrete samples
    Run {
        #[command(flatten)]
        common: Common,
    },
    /// Observable after a fixed time over a list of time steps, with fitted orders
    Converge {
        #[command(flatten)]
        common: Common,
        /// Time steps, comma separated (default: a range suited to the equation)
        #[arg(long, value_delimiter = ',')]
        dts: Vec<f64>,
        /// abs_moment or abs_weighted_mean
        #[arg(long)]
        observable: Option<String>,
    },
    /// Relative norm error after every step
    Norms {
        #[command(flatten)]
        common: Common,
    },
    /// Phase error against eta sin(theta) for advection schemes
    Phase {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.7)]
        eta: f64,
        #[arg(long, default_value_t = 181)]
        ntheta: usize,
    },
}

#[derive(Args, Default)]
struct Common {
    /// diffusion, advection or advdiff
    #[arg(long)]
    equation: Option<String>,
    /// Scheme presets, comma separated
    #[arg(long, value_delimiter = ',')]
    scheme: Vec<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long, conflicts_with = "tfinal")]
    steps: Option<usize>,
    #[arg(long)]
    tfinal: Option<f64>,
    /// Diffusion coefficient D
    #[arg(long)]
    dcoef: Option<f64>,
    /// Velocity v
    #[arg(long, allow_negative_numbers = true)]
    vel: Option<f64>,
    /// gaussian or sextic
    #[arg(long)]
    profile: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    center: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy)]
enum Kind {
    Ampfactor,
    Run,
    Converge,
    Norms,
    Phase,
}

fn defaults(kind: Kind, equation: Equation) -> ExperimentConfig {
    let base = match (kind, equation) {
        (Kind::Norms, _) => ExperimentConfig::advdiff_norms(),
        (Kind::Converge, Equation::Diffusion) => ExperimentConfig::diffusion_convergence(),
        (Kind::Converge, Equation::Advection) => ExperimentConfig::advection_convergence(),
        (Kind::Converge, Equation::AdvDiff) => ExperimentConfig { tfinal: Some(10.0), ..ExperimentConfig::advdiff_norms() },
        (Kind::Phase, _) => ExperimentConfig {
            schemes: ["a2", "a2s", "a2c", "rw2", "3xa2c", "fr", "5xa2c", "s4", "7xa2c", "y6"].map(String::from).to_vec(),
            ..ExperimentConfig::advection_transport()
        },
        (_, Equation::Diffusion) => ExperimentConfig::diffusion_gaussian(),
        (_, Equation::Advection) => ExperimentConfig::advection_transport(),
        (_, Equation::AdvDiff) => ExperimentConfig::advdiff_run(),
    };
    let mut cfg = ExperimentConfig { equation, ..base };
    if cfg.equation != base_equation(kind, equation) {
        cfg.schemes = vec!["exact".into()];
    }
    if matches!(kind, Kind::Ampfactor) {
        cfg.schemes = match equation {
            Equation::Diffusion => vec!["d2".into(), "d2s".into()],
            Equation::Advection => vec!["a2".into(), "a2s".into(), "a2c".into(), "rw2".into()],
            Equation::AdvDiff => vec!["rw2".into(), "ad2c".into(), "a_d".into()],
        };
    }
    cfg
}

fn base_equation(kind: Kind, equation: Equation) -> Equation {
    match kind {
        Kind::Norms => Equation::AdvDiff,
        Kind::Phase => Equation::Advection,
        _ => equation,
    }
}

fn build(kind: Kind, c: &Common) -> Result<ExperimentConfig> {
    let default_eq = match kind {
        Kind::Norms => Equation::AdvDiff,
        Kind::Phase => Equation::Advection,
        _ => Equation::Diffusion,
    };
    let equation = c.equation.as_deref().map(str::parse).transpose()?.unwrap_or(default_eq);
    let mut cfg = defaults(kind, equation);
    if !c.scheme.is_empty() {
        cfg.schemes = c.scheme.clone();
    }
    cfg.nx = c.nx.unwrap_or(cfg.nx);
    cfg.xmin = c.xmin.unwrap_or(cfg.xmin);
    cfg.xmax = c.xmax.unwrap_or(cfg.xmax);
    cfg.dt = c.dt.unwrap_or(cfg.dt);
    if c.steps.is_some() || c.tfinal.is_some() {
        cfg.steps = c.steps;
        cfg.tfinal = c.tfinal;
    }
    cfg.dcoef = c.dcoef.unwrap_or(cfg.dcoef);
    cfg.vel = c.vel.unwrap_or(cfg.vel);
    if let Some(p) = &c.profile {
        cfg.profile = p.parse::<Profile>()?;
    }
    cfg.center = c.center.unwrap_or(cfg.center);
    cfg.sigma = c.sigma.unwrap_or(cfg.sigma);
    Ok(cfg)
}

fn default_dts(e: Equation) -> Vec<f64> {
    match e {
        Equation::Diffusion => [9, 12, 16, 20, 25, 32, 40, 50, 64, 80, 100, 128, 160, 200, 256, 320, 400]
            .iter()
            .map(|&m| 1.0 / f64::from(m))
            .collect(),
        _ => [50, 60, 70, 80, 100, 125, 160, 200, 250, 320, 400, 500, 640, 800, 1000]
            .iter()
            .map(|&m| 10.0 / f64::from(m))
            .collect(),
    }
}

fn execute(cli: Cli) -> Result<(String, Option<PathBuf>)> {
    let (csv, common) = match cli.command {
        Command::Ampfactor { common, r, eta, ntheta } => (cmd_ampfactor(&build(Kind::Ampfactor, &common)?, r, eta, ntheta)?, common),
        Command::Run { common } => (cmd_run(&build(Kind::Run, &common)?)?, common),
        Command::Converge { common, dts, observable } => {
            let cfg = build(Kind::Converge, &common)?;
            let dts = if dts.is_empty() { default_dts(cfg.equation) } else { dts };
            let observable = match observable {
                Some(o) => o.parse()?,
                None if cfg.equation == Equation::Diffusion => Observable::AbsMoment,
                None => Observable::AbsWeightedMean,
            };
            (cmd_converge(&cfg, &dts, observable)?, common)
        }
        Command::Norms { common } => (cmd_norms(&build(Kind::Norms, &common)?)?, common),
        Command::Phase { common, eta, ntheta } => (cmd_phase(&build(Kind::Phase, &common)?, eta, ntheta)?, common),
    };
    Ok((csv, common.out))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok((csv, None)) => {
            print!("{csv}");
            ExitCode::SUCCESS
        }
        Ok((csv, Some(path))) => match fs::write(&path, csv) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
