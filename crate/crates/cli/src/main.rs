//! `fcg`: command-line frontend for function-controlled gates.
//!
//! Exit codes: 0 pass, 1 check failure, 2 parse error, 3 validation error,
//! 4 I/O error, 5 schema violation.

mod args;
mod commands;
mod error;
mod inputs;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::BuildMatrix(a) => commands::build_matrix(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Verify(a) => commands::verify(a),
        Command::Grover(a) => commands::grover(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code)
        }
    }
}
