use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gainsign::cli::{run, Cli};

fn main() -> ExitCode {
    let report = run(&Cli::parse());
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(report.stdout.as_bytes());
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    ExitCode::from(report.code)
}
