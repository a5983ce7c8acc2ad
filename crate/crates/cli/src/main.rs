//! `dpp-scaling`: batch front end for kernels, limit laws, gap
//! probabilities and convergence ladders.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonArgs, RunConfig};

/// Caps the worker pool; unset means one thread per core.
pub const THREADS_ENV: &str = "DPP_SCALING_THREADS";

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters that violate an invariant. Exit code 2.
    Usage(String),
    /// The numerics failed. Exit code 1.
    Compute(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => f.write_str(m),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dpp-scaling",
    version,
    about = "Scaling limits of unitary-ensemble projection kernels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sturm–Liouville data, scaling exponents, edges and maps.
    Info(CommonArgs),
    /// Scaled kernel against its limit on a grid.
    Kernel(CommonArgs),
    /// Finite-n density against the limit law, with the total mass.
    Density(CommonArgs),
    /// Gap probability det(I − K) on an interval.
    Gap(CommonArgs),
    /// Grid, diagonal, trace and gap errors along a ladder of n.
    Converge(CommonArgs),
}

fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))),
        },
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(k) = thread_count()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Compute(format!("thread pool: {e}")))?;
    }
    let (name, args): (&'static str, &CommonArgs) = match &cli.command {
        Command::Info(a) => ("info", a),
        Command::Kernel(a) => ("kernel", a),
        Command::Density(a) => ("density", a),
        Command::Gap(a) => ("gap", a),
        Command::Converge(a) => ("converge", a),
    };
    let cfg = RunConfig::resolve(name, args)?;
    let report = match name {
        "info" => commands::info(&cfg),
        "kernel" => commands::kernel(&cfg),
        "density" => commands::density_cmd(&cfg),
        "gap" => commands::gap(&cfg),
        _ => commands::converge(&cfg),
    }?;
    let text = report.render(cfg.format);
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Compute(format!("cannot write output: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
