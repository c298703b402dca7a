//! Command-line front end for `wilton-core`: argument parsing, JSON and CSV
//! output, residual sweeps, decay fits and the verification suites.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
mod error;
pub mod output;
mod pool;
pub mod suites;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use commands::{execute, Outcome};
pub use error::CliError;
pub use suites::{run_suite, SuiteOptions, SuiteReport};

/// Largest divisor table the CLI will allocate.
pub const MAX_TABLE_LIMIT: usize = 100_000_000;

pub(crate) fn check_table_limit(limit: usize) -> Result<(), CliError> {
    if limit > MAX_TABLE_LIMIT {
        return Err(CliError::Core(wilton_core::Error::Resource {
            guard: "divisor table size",
            requested: limit as f64,
            limit: MAX_TABLE_LIMIT as f64,
            hint: "lower --table-limit or the largest v",
        }));
    }
    Ok(())
}

/// Parse `args`, run the command and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::ChecksFailed(n)) => {
            let _ = writeln!(err, "{n} check(s) failed");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
