//! `purecc` — reproduces the toolkit's figure data as CSV/JSON and runs the
//! formula-versus-circuit verification suite.
//!
//! Every command accepts its parameters as flags, as a JSON config file
//! (`--config`), or both; flags override file values, and unknown config
//! keys are rejected. Exit codes: 0 success, 1 computation failure, 2
//! configuration failure.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use config::CliError;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "purecc",
    version,
    about = "Entanglement-distribution analysis: fidelity recursions, resource costs, \
             circuit-oracle verification, and congestion experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate fidelity trajectories for both schemes (rows: scheme,F0,n,fidelity)
    Fidelity(commands::fidelity::FidelityArgs),
    /// Tabulate rounds needed to reach targets (rows: scheme,F0,target,n)
    Iterations(commands::iterations::IterationsArgs),
    /// Tabulate per-repeater memory and operation costs versus achieved fidelity
    Resources(commands::resources::ResourcesArgs),
    /// Check every closed-form formula against the exact circuit simulator
    Verify(commands::verify::VerifyArgs),
    /// Run the seeded k-by-k grid congestion Monte Carlo for both schemes
    Gridsim(commands::gridsim::GridsimArgs),
    /// Analyze routing congestion of a repeater graph file
    Capacity(commands::capacity::CapacityArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fidelity(args) => commands::fidelity::run(args),
        Command::Iterations(args) => commands::iterations::run(args),
        Command::Resources(args) => commands::resources::run(args),
        Command::Verify(args) => commands::verify::run(args),
        Command::Gridsim(args) => commands::gridsim::run(args),
        Command::Capacity(args) => commands::capacity::run(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
