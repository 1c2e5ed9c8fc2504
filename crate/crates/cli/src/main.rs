use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyproj::generate::{generate_instance, InstanceKind};
use polyproj::{Instance, ProjError, Tolerances};

mod experiment;
mod json;
mod project;

/// Exact projections onto hyperplanes, halfspaces and their intersections.
#[derive(Debug, Parser)]
#[command(name = "polyproj", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Project one point of an instance and print the result as JSON.
    Project {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        point: usize,
        #[arg(long, value_enum, default_value_t = project::Method::ClosedForm)]
        method: project::Method,
        /// Sweep limit for `--method dykstra`.
        #[arg(long, default_value_t = 10_000)]
        max_sweeps: usize,
    },
    /// Run a batch of rate, exactness and Dykstra checks.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Output directory for the CSV files and summary.json.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Write a random instance.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[clap(rename_all = "snake_case")]
enum KindArg {
    PairHalfspace,
    HyperplaneHalfspace,
    HyperplaneSystem,
}

impl From<KindArg> for InstanceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::PairHalfspace => InstanceKind::PairHalfspace,
            KindArg::HyperplaneHalfspace => InstanceKind::HyperplaneHalfspace,
            KindArg::HyperplaneSystem => InstanceKind::HyperplaneSystem,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Empty,
    Input(String),
}

impl From<ProjError> for CliError {
    fn from(e: ProjError) -> Self {
        match e {
            ProjError::EmptySet => CliError::Empty,
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Membership tolerance from `POLYPROJ_TOL`, if set.
fn env_tolerance() -> Result<Option<f64>, CliError> {
    match std::env::var("POLYPROJ_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(Some(t)),
            _ => Err(CliError::Input(format!(
                "POLYPROJ_TOL must be a nonnegative number, got {s:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Project {
            instance,
            point,
            method,
            max_sweeps,
        } => {
            let inst: Instance = read_json(&instance)?;
            let mut tol = Tolerances::default();
            if let Some(t) = env_tolerance()? {
                tol.membership = t;
            }
            let out = project::run(&inst, point, method, &tol, max_sweeps)?;
            print!("{}", json::to_string(&out)?);
        }
        Command::Experiment { config, out } => {
            let cfg: experiment::ExperimentConfig = read_json(&config)?;
            let summary = experiment::run(&cfg, env_tolerance()?, &out)?;
            print!("{}", json::to_string(&summary)?);
        }
        Command::Generate {
            seed,
            dim,
            kind,
            out,
        } => {
            let inst = generate_instance(seed, dim, kind.into())?;
            let text = json::to_string(&inst)?;
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Empty) => {
            eprintln!("error: empty intersection");
            ExitCode::from(2)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
