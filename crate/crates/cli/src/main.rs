use clap::Parser;
use phasedeficit_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("phasedeficit: {e}");
        std::process::exit(e.exit_code());
    }
}
