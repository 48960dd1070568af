mod args;
mod commands;
mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit status of one invocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    AssertionFailed = 1,
    UsageError = 2,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::UsageError as u8 } else { 0 });
        }
    };
    let output = cli.output;
    match commands::run(cli) {
        Ok(outcome) => {
            let text = render::render(&outcome, output);
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("uecrit: {}", e.message);
            ExitCode::from(e.status as u8)
        }
    }
}
