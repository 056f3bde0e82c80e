//! Command-line front end for `span-oracle`.
//!
//! [`run`] parses arguments, executes one command and returns what the
//! binary should print and its exit code, so the whole front end can be
//! driven in-process by tests.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 contract
//! violation (uncertified net, weighted graph for the combined oracle, a
//! failed verification), 4 internal invariant failure. Failures print a JSON
//! error payload on stderr.

mod args;
pub mod commands;
mod error;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::*;
pub use error::CliError;
pub use report::Report;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "SPAN_ORACLE_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(err: &CliError) -> Self {
        Self {
            code: err.exit_code(),
            stdout: String::new(),
            stderr: err.to_json(),
        }
    }
}

/// Sizes the global rayon pool from [`THREADS_ENV`]. Only the first call in
/// a process takes effect.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{value}`"
            ))
        })?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<commands::Done, CliError> {
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::BuildNet(a) => commands::build_net_cmd(a),
        Command::VerifyNet(a) => commands::verify_net_cmd(a),
        Command::BuildOracle(a) => commands::build_oracle(a),
        Command::Query(a) => commands::query(a),
        Command::EvalEmbed(a) => commands::eval_embed(a),
        Command::VcCheck(a) => commands::vc_check(a),
        Command::Bench(a) => commands::bench(a),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => return Outcome::failure(&CliError::Usage(e.to_string())),
    };
    if let Err(e) = configure_threads() {
        return Outcome::failure(&e);
    }
    let done = match execute(&cli) {
        Ok(done) => done,
        Err(e) => return Outcome::failure(&e),
    };

    let json = done.report.to_json();
    let mut stdout = done.text.clone().unwrap_or_default();
    match &cli.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                return Outcome::failure(&CliError::Input(format!("{}: {e}", path.display())));
            }
        }
        None if done.text.is_none() => stdout = json,
        None => {}
    }
    let msg = format!("{} reported a violation", done.report.command);
    let stderr = match done.code {
        0 => String::new(),
        3 => CliError::Contract(msg).to_json(),
        _ => CliError::Internal(msg).to_json(),
    };
    Outcome {
        code: done.code,
        stdout,
        stderr,
    }
}
