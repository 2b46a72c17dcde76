//! The `qubit-fanout` command.
//!
//! Exit status: 0 success, 1 usage error, 2 oracle failure, 3 I/O error.

use std::ffi::OsString;
use std::process::ExitCode;

use super::config::{parse_config, ParseError, RunConfig, RunOptions};
use super::{run_experiment, write_results, RunResults};
use crate::error::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CHECK_FAILED: u8 = 2;
pub const EXIT_IO: u8 = 3;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Runs an already parsed configuration, writing results and a summary.
pub fn execute(cfg: &RunConfig, opts: &RunOptions) -> u8 {
    let results = match opts.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_experiment(cfg, opts)),
            Err(e) => {
                eprintln!("error: cannot start {n} worker threads: {e}");
                return EXIT_USAGE;
            }
        },
        None => run_experiment(cfg, opts),
    };
    let results = match results {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let files = match write_results(&results, cfg) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    println!(
        "{} seed={} -> {}",
        cfg.experiment,
        cfg.master_seed,
        files.csv.display()
    );
    if let Some(svg) = &files.svg {
        println!("chart -> {}", svg.display());
    }
    if let RunResults::Oracle(report) = &results {
        println!("{report}");
        if !report.passed() {
            return EXIT_CHECK_FAILED;
        }
    }
    EXIT_OK
}

/// Parses `args` (program name first) and runs. Returns the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_config(args) {
        Ok((cfg, opts)) => execute(&cfg, &opts),
        Err(ParseError::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
        Err(ParseError::Config(e)) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

pub fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
