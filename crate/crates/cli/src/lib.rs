//! `spincm` command-line front end.

pub mod commands;
pub mod config;
pub mod suites;

use std::ffi::OsString;

use clap::Parser;
use spincm_core::error::Error;

pub use config::{Cli, Command, Format, RunConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_EMPTY_ZERO: i32 = 4;

/// Environment variable overriding `--threads`.
pub const THREADS_ENV: &str = "SPINCM_THREADS";

#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeCap { .. } => EXIT_CAP,
        Error::EmptyZeroWeight(_) => EXIT_EMPTY_ZERO,
        Error::Internal(_) | Error::ShapeMismatch(_) => EXIT_FAIL,
        _ => EXIT_INVALID,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INVALID,
                    stderr: text,
                    ..Default::default()
                }
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    ..Default::default()
                }
            };
        }
    };
    let env_threads = std::env::var(THREADS_ENV).ok();
    let config = match RunConfig::from_cli(&cli, env_threads.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: EXIT_INVALID,
                stderr: format!("error: {e}\n"),
                ..Default::default()
            }
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.threads).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_INVALID,
                stderr: format!("error: thread pool: {e}\n"),
                ..Default::default()
            }
        }
    };
    pool.install(|| commands::dispatch(&cli.command, &config))
}
