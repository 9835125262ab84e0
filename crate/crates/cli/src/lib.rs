//! Library side of the `bohr` command-line tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod grid;

use commands::Outcome;
use config::{Cli, Command};
use error::CliError;

/// Runs a parsed command line and renders its output.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Solve { config, .. } => commands::cmd_solve(config),
        Command::Sweep { grid, config } => commands::cmd_sweep(config, grid),
        Command::Verify { config } => commands::cmd_verify(config),
        Command::Conjecture { part, analytic_only, config } => commands::cmd_conjecture(config, part, *analytic_only),
        Command::Catalog { config } => commands::cmd_catalog(config),
    }
}

/// Output path chosen on the command line.
pub fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    let config = match &cli.command {
        Command::Solve { config, .. }
        | Command::Sweep { config, .. }
        | Command::Verify { config }
        | Command::Conjecture { config, .. }
        | Command::Catalog { config } => config,
    };
    config.out.as_deref()
}
