//! Command-line front end: single-point evaluation, parameter sweeps with
//! CSV output, built-in parameter studies and a cross-oracle validation
//! suite.

// `!(x > 0.0)` guards are deliberate: unlike `x <= 0.0` they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod cli;
pub mod csv;
pub mod error;
pub mod presets;
pub mod run;
pub mod settings;
pub mod sweep_spec;

use crate::cli::{Cli, Command};
use crate::error::CliResult;

/// Dispatch a parsed command line. The caller maps errors to exit codes.
pub fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Eval(args) => {
            let mut settings = cli::settings_for_eval(&args)?;
            run::materialize_defaults(&mut settings);
            run::run_eval(&settings)
        }
        Command::Sweep(args) => {
            let mut settings = cli::settings_for_sweep(&args)?;
            run::materialize_defaults(&mut settings);
            run::run_sweep(&settings)
        }
        Command::Figure(args) => {
            let mut settings = cli::settings_for_figure(&args)?;
            run::materialize_defaults(&mut settings);
            run::run_sweep(&settings)
        }
        Command::Validate(args) => checks::run_validate(args.quick, args.inject_fault),
        Command::DumpConfig(args) => {
            let mut settings = cli::settings_for_dump(&args)?;
            run::materialize_defaults(&mut settings);
            print!("{}", settings.dump());
            Ok(())
        }
    }
}
