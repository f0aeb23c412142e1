//! Command-line front end for the `unital` toolkit.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit status: 0 on success, 2 when a verification check fails, 1 on usage
//! or I/O errors.

pub mod args;
pub mod commands;
pub mod output;
pub mod suite;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;
pub use commands::{execute, CliError, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `unital --help` for the synopsis");
            }
            return EXIT_USAGE;
        }
    };
    if let Err(e) = output::emit(&outcome.body, cli.out.as_deref()) {
        eprintln!("{}", CliError::Io(e));
        return EXIT_USAGE;
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}
