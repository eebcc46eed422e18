use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use diatomic_cli::commands::{cmd_compare, cmd_dispersion, cmd_simulate};
use diatomic_cli::config::ScenarioConfig;
use diatomic_cli::CliError;

#[derive(Parser)]
#[command(name = "diatomic-wave", version, about = "Localized waves in a diatomic crystal lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Scenario file (`key = value` lines under `[section]` headers).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `[run] out`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice constants, dispersion parameters and branch tables.
    Dispersion(Common),
    /// One CSV per method and time.
    Simulate(Common),
    /// Pairwise error norms between the configured methods.
    Compare(Common),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (common, which) = match &cli.command {
        Command::Dispersion(c) => (c, "dispersion"),
        Command::Simulate(c) => (c, "simulate"),
        Command::Compare(c) => (c, "compare"),
    };
    if let Some(n) = common.threads {
        if n == 0 {
            return Err(CliError::config("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(format!("cannot set up {n} threads: {e}")))?;
    }
    let mut cfg = ScenarioConfig::from_file(&common.config)?;
    if let Some(out) = &common.out {
        cfg.out_dir = out.clone();
    }
    for line in cfg.echo() {
        eprintln!("# {line}");
    }
    let written = match which {
        "dispersion" => cmd_dispersion(&cfg)?,
        "simulate" => cmd_simulate(&cfg)?,
        _ => vec![cmd_compare(&cfg)?],
    };
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
