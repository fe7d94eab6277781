//! `srp`: exact unit-circle criteria for self-reciprocal polynomials.

mod args;
mod commands;
mod error;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap already exits 0 for --help/--version and 2 for usage errors
            e.exit();
        }
    };
    let result = match &cli.command {
        Command::Check(a) => commands::check::run(a, cli.format),
        Command::Rvalues(a) => commands::rvalues::run(a, cli.format),
        Command::Verify(a) => commands::verify::run(a, cli.format),
        Command::Experiment(a) => commands::experiment::run(a, cli.format),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("srp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
