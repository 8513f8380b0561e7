//! `lalkit`: command-line driver for the resampling solvers.
//!
//! Exit status 0 means success, 1 a negative answer (a run failed, a
//! condition does not hold, a solution is invalid), 2 a usage or input
//! error.

mod args;
mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

fn configure_threads() {
    let Ok(raw) = std::env::var("LALKIT_MAX_THREADS") else { return };
    match raw.parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("ignoring LALKIT_MAX_THREADS={raw:?}: expected a positive integer"),
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    configure_threads();
    match commands::dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
