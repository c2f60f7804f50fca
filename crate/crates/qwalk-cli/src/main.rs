//! `qwalk`: coined quantum walks on the integer lattice from the
//! command line. Every run is driven by a TOML configuration file;
//! results are written as CSV and/or JSON with deterministic bytes.

mod commands;
mod config;
mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::CommandKind;
use config::Overrides;
use error::CliError;

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Coined quantum walks on Z^d: simulation, weak-limit laws, and convergence reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the walk and write position distributions.
    Simulate(RunArgs),
    /// Compute the weak-limit law on a momentum grid.
    Limit(RunArgs),
    /// Compare rescaled finite-time walks against the limit law.
    Compare(RunArgs),
    /// Tabulate scaled moments against the limit law's moments.
    Moments(RunArgs),
    /// Repeat a command over a sweep of walk-parameter values.
    Sweep(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the TOML configuration file.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory (overrides [output].dir).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Output format: csv, json, or both (overrides [output].format).
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Momentum grid points per axis (overrides [run].grid).
    #[arg(long, value_name = "M")]
    grid: Option<usize>,
    /// Worker threads (default: QWALK_THREADS, then all cores).
    #[arg(long, value_name = "K")]
    threads: Option<usize>,
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("QWALK_THREADS") {
        Ok(raw) => {
            let parsed = raw.parse::<usize>().map_err(|_| {
                CliError::Config(format!("QWALK_THREADS must be a positive integer, got `{raw}`"))
            })?;
            Ok(Some(parsed))
        }
        Err(_) => Ok(None),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (kind, args) = match &cli.command {
        Command::Simulate(a) => (CommandKind::Simulate, a),
        Command::Limit(a) => (CommandKind::Limit, a),
        Command::Compare(a) => (CommandKind::Compare, a),
        Command::Moments(a) => (CommandKind::Moments, a),
        Command::Sweep(a) => (CommandKind::Sweep, a),
    };
    if let Some(k) = thread_count(args.threads)? {
        if k == 0 {
            return Err(CliError::Config("thread count must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot configure {k} threads: {e}")))?;
    }
    let text = std::fs::read_to_string(&args.config).map_err(|e| {
        CliError::Config(format!("cannot read {}: {e}", args.config.display()))
    })?;
    let config = config::parse_config(&text)?;
    let overrides = Overrides {
        out: args.out.clone(),
        format: args.format.clone(),
        grid: args.grid,
    };
    commands::run_command(kind, &config, &overrides)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // Usage problems are input errors.
            let _ = e.print();
            std::process::exit(1);
        }
        Err(e) => {
            // --help and --version.
            let _ = e.print();
            std::process::exit(0);
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
