//! `ndtlab`: delivery-time analysis for a cache-aided broadcast-relay
//! downlink. Exact NDT bounds, cache-size sweeps, region maps, verified
//! two-phase schedules and Monte-Carlo power-level validation.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use output::{CliError, Outcome, EXIT_IO, EXIT_USAGE, EXIT_VERIFICATION};

#[derive(Parser)]
#[command(
    name = "ndtlab",
    version,
    about = "Delivery-time analysis for cache-aided broadcast-relay downlinks",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact NDT bounds and the optimality gap for one configuration
    Bounds(commands::bounds::BoundsArgs),
    /// Corner-point and envelope sweep over the cache size
    Sweep(commands::sweep::SweepArgs),
    /// Region map over (mu, M) for fixed K, with border curves
    Regions(commands::regions::RegionsArgs),
    /// Build, serialize and verify the two-phase delivery schedule
    Schedule(commands::schedule::ScheduleArgs),
    /// Monte-Carlo validation of the zero-forcing power-level exponents
    Simulate(commands::simulate::SimulateArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Bounds(args) => commands::bounds::run(args),
        Cmd::Sweep(args) => commands::sweep::run(args),
        Cmd::Regions(args) => commands::regions::run(args),
        Cmd::Schedule(args) => commands::schedule::run(args),
        Cmd::Simulate(args) => commands::simulate::run(args),
    };
    let code = match result {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::VerificationFailed) => EXIT_VERIFICATION,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            EXIT_USAGE
        }
        Err(CliError::Io(err)) => {
            eprintln!("error: {}", err);
            EXIT_IO
        }
    };
    std::process::exit(code);
}
