//! Command-line front end for the `korselt` library.

pub mod args;
pub mod commands;
pub mod error;
pub mod record;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use korselt::Jobs;

use crate::args::{Cli, Command};
use crate::commands::Context;
use crate::error::CliError;

pub use crate::record::{Cache, ScanRecord};

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = Context {
        format: cli.format,
        jobs: cli.jobs.map(Jobs::new).unwrap_or_default(),
        cache: cli.cache.as_deref(),
    };
    match &cli.command {
        Command::Set {
            n,
            domain,
            include_trivial,
        } => commands::set(&ctx, out, *n, *domain, *include_trivial),
        Command::Weight {
            n,
            range,
            domain,
            include_trivial,
        } => commands::weight(&ctx, out, *n, range.as_deref(), *domain, *include_trivial),
        Command::Base { alpha, max } => commands::base(&ctx, out, alpha, *max),
        Command::Carmichael { max } => commands::carmichael(&ctx, out, *max),
        Command::Bounds { n } => commands::bounds(&ctx, out, *n),
        Command::Verify { range, checks } => commands::verify(&ctx, out, range, checks),
        Command::Scan {
            range,
            out: path,
            timings,
        } => commands::scan(&ctx, out, range, path.as_deref(), *timings),
    }
}
