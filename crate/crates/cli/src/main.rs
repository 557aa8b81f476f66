mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Args;

/// Exit codes: 0 success/valid, 1 invalid object, 2 usage error,
/// 3 retry or restart budget exhausted. Clap itself exits 2 on
/// unparseable command lines.
fn main() -> ExitCode {
    let args = Args::parse();
    match commands::run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
