//! Command-line front end: region expansion, capacity sweeps,
//! degrees-of-freedom curves, Monte-Carlo simulation and cross-matrix
//! reduction, all driven by JSON configs with flag overrides.

mod commands;
mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use config::{RegionConfig, SimulateConfig, SweepSpec};
use gicjam_core::params::CrossMatrix;

const USAGE: &str = "\
gicjam: capacity bounds and jamming simulation for the two-user Gaussian
interference channel.

USAGE:
  gicjam <region|symcap|dof|simulate|reduce> --config PATH [FLAGS]

FLAGS:
  --config PATH   JSON input (required); shape depends on the subcommand
  --out PATH      write the primary output here instead of stdout
  --seed N        override the seed (simulate; also over GICJAM_SEED)
  --step X        override the alpha grid step (region/symcap/dof)
  --trials N      override the trial count (simulate)
  --help          show this text

SUBCOMMANDS:
  region    channel JSON -> outer / fixed-split / feasible-union regions
  symcap    sweep spec -> CSV of symmetric-capacity bounds
  dof       sweep spec -> CSV of degrees-of-freedom curves
  simulate  run config -> summary CSV (+ optional JSON-lines trial log)
  reduce    cross-matrix JSON -> equivalent jammer-to-noise ratios

EXIT CODES: 0 ok, 1 configuration error, 2 runtime error.
";

/// Errors split by exit code: bad inputs (1) versus failures while doing the
/// work (2).
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    fn config(e: gicjam_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

#[derive(Debug, Default)]
struct Flags {
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    seed: Option<u64>,
    step: Option<f64>,
    trials: Option<u64>,
}

fn parse_flags(args: &[String]) -> Result<Flags, CliError> {
    let mut flags = Flags::default();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let (name, inline) = match arg.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (arg.as_str(), None),
        };
        let mut value = |flag: &str| -> Result<String, CliError> {
            inline
                .clone()
                .or_else(|| it.next().cloned())
                .ok_or_else(|| CliError::Config(format!("missing value for {flag}")))
        };
        match name {
            "--config" => flags.config = Some(PathBuf::from(value("--config")?)),
            "--out" => flags.out = Some(PathBuf::from(value("--out")?)),
            "--seed" => {
                flags.seed = Some(value("--seed")?.parse().map_err(|_| {
                    CliError::Config("--seed expects an unsigned integer".into())
                })?)
            }
            "--step" => {
                flags.step = Some(
                    value("--step")?
                        .parse()
                        .map_err(|_| CliError::Config("--step expects a number".into()))?,
                )
            }
            "--trials" => {
                flags.trials = Some(value("--trials")?.parse().map_err(|_| {
                    CliError::Config("--trials expects an unsigned integer".into())
                })?)
            }
            "--help" | "-h" => {
                println!("{USAGE}");
                std::process::exit(0);
            }
            other => return Err(CliError::Config(format!("unknown flag {other}"))),
        }
    }
    Ok(flags)
}

fn load<T: serde::de::DeserializeOwned>(flags: &Flags) -> Result<T, CliError> {
    let path = flags
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("malformed config {}: {e}", path.display())))
}

fn emit(flags: &Flags, default_path: Option<&str>, text: &str) -> Result<(), CliError> {
    let target = flags.out.clone().or_else(|| default_path.map(PathBuf::from));
    match target {
        Some(path) => fs::write(&path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("GICJAM_SEED").ok().and_then(|v| v.parse().ok())
}

fn run(cmd: &str, flags: &Flags) -> Result<(), CliError> {
    match cmd {
        "region" => {
            let cfg: RegionConfig = load(flags)?;
            let text = commands::cmd_region(&cfg, flags.step)?;
            emit(flags, None, &text)
        }
        "symcap" => {
            let spec: SweepSpec = load(flags)?;
            let text = commands::cmd_symcap(&spec, flags.step)?;
            emit(flags, spec.output.as_deref(), &text)
        }
        "dof" => {
            let spec: SweepSpec = load(flags)?;
            let text = commands::cmd_dof(&spec, flags.step)?;
            emit(flags, spec.output.as_deref(), &text)
        }
        "simulate" => {
            let mut cfg: SimulateConfig = load(flags)?;
            if let Some(seed) = flags.seed.or_else(env_seed) {
                cfg.sim.seed = seed;
            }
            if let Some(trials) = flags.trials {
                cfg.sim.trials = trials;
            }
            let (summary, log) = commands::cmd_simulate(&cfg)?;
            if let (Some(path), Some(log)) = (cfg.trial_log.as_ref(), log) {
                fs::write(path, log)
                    .map_err(|e| CliError::Runtime(format!("cannot write {path}: {e}")))?;
            }
            emit(flags, None, &summary)
        }
        "reduce" => {
            let matrix: CrossMatrix = load(flags)?;
            let text = commands::cmd_reduce(&matrix)?;
            emit(flags, None, &text)
        }
        other => Err(CliError::Config(format!("unknown subcommand {other:?}\n\n{USAGE}"))),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(cmd) = args.first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(1);
    };
    if cmd == "--help" || cmd == "-h" {
        println!("{USAGE}");
        return ExitCode::SUCCESS;
    }
    let flags = match parse_flags(&args[1..]) {
        Ok(f) => f,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cmd, &flags) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
