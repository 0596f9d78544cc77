use std::process::ExitCode;

use clap::Parser;
use udwlab::{exit_code, run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("udwlab: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
