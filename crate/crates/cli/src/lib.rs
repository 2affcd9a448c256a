//! Command-line front end for `phasedeficit-core`: scenario sweeps, figure
//! datasets and the formula audit report.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod rows;
pub mod table;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Sweep(a) => commands::sweep(a),
        Command::Figures(a) => commands::figures(a),
        Command::Audit(a) => commands::audit(a),
        Command::Selftest(a) => commands::selftest(a),
    }
}
