//! `mzv`: evaluate renormalized multiple zeta values, regenerate the depth-two
//! table, inspect regularized expansions and run identity-check suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input or out-of-domain
//! arguments, 3 internal invariant violation.

mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;
use mzv_core::WindowPolicy;

use args::{Cli, Command, Format};
use commands::Failure;

fn run(cli: &Cli) -> Result<report::Report, Failure> {
    let policy = WindowPolicy::from_env().map_err(Failure::from)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure::Internal(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Eval(a) => commands::eval(a, policy),
        Command::Table(a) => commands::table(a, policy),
        Command::Expand(a) => commands::expand(a, policy),
        Command::Check(a) => commands::check(a, policy),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => println!("{}", report.render_text()),
                Format::Json => println!("{}", report.render_json()),
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
