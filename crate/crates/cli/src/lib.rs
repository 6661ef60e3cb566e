//! Command-line front end for `origami-core`: table caching, the verification
//! suites and the exporters.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod pipeline;

use clap::Parser;

use crate::config::{Cli, Command, RunConfig};
use crate::error::CliResult;

fn dispatch(cli: &Cli) -> CliResult<u8> {
    let cfg = RunConfig::from_args(&cli.global)?;
    match &cli.command {
        Command::Enumerate => commands::enumerate(&cfg),
        Command::Greens => commands::greens(&cfg),
        Command::Verify { suite } => commands::verify(&cfg, *suite),
        Command::NormalForms => commands::normal_forms(&cfg),
        Command::Export => commands::export(&cfg),
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("origami: {e}");
            e.exit_code()
        }
    }
}
