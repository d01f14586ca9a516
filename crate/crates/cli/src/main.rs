//! `cpgb`: derive, solve and simulate closure approximations of the
//! one-dimensional contact process.
//!
//! Exit status: 0 success, 2 usage error, 3 degenerate system, 4 numerical
//! failure.

mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use manifest::ManifestClock;

fn init_logging(trace: bool) {
    let default = if trace { "warn,cp_groebner=debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(default)).format_timestamp(None).init();
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    init_logging(matches!(&cli.command, Command::Groebner(g) if g.trace));
    let clock = ManifestClock::start(argv);
    let result = match &cli.command {
        Command::Identities(a) => commands::identities(a),
        Command::Ideal(a) => commands::ideal(a),
        Command::Groebner(a) => commands::groebner(a),
        Command::Approx(a) => commands::approx(a, &clock),
        Command::Sweep(a) => commands::sweep(a, &clock),
        Command::Simulate(a) => commands::simulate(a, &clock),
        Command::Compare(a) => commands::compare(a, &clock),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cpgb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
