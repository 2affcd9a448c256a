use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "phasedeficit",
    version,
    about = "Pancharatnam phase deficit: scenario sweeps, figure datasets and formula audit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a scenario at one point or over a swept parameter and write a CSV.
    Sweep(SweepArgs),
    /// Write the figure datasets and the audit report into a directory.
    Figures(FiguresArgs),
    /// Grade every published closed form against the oracle.
    Audit(AuditArgs),
    /// Run quick seeded consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Flat `key = value` file; command-line flags override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Seed recorded in outputs and used by the self-test.
    #[arg(long)]
    pub seed: Option<String>,
    /// Poisson tail bound for the Fock truncation (default 1e-12).
    #[arg(long)]
    pub tail: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// micro_macro, cat or kondo.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Fix a scenario parameter, e.g. `--set g1=pi/2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Swept parameter, e.g. `--sweep theta=0:pi:200`.
    #[arg(long, value_name = "KEY=START:STOP:COUNT")]
    pub sweep: Option<String>,
    /// Output CSV; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Fig1,
    Fig2,
    All,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Which::All)]
    pub which: Which,
    /// Output directory, created if missing.
    #[arg(long, value_name = "DIR", default_value = "figures")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Restrict to these formula ids (repeatable); all when omitted.
    #[arg(long = "formula", value_name = "ID")]
    pub formulas: Vec<String>,
    /// Report file; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}
