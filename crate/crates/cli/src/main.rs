use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod figure;
mod output;
mod svg;
mod table;
mod verify;

use args::{Cli, Command};
use output::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let out = &cli.output;
    let tables = match &cli.command {
        Command::CriticalPoints(a) => commands::critical_points(a, out)?,
        Command::Puiseux(a) => commands::puiseux(a)?,
        Command::LevelCurve(a) => commands::level_curve(a, out)?,
        Command::Trajectory(a) => commands::trajectory(a, out)?,
        Command::Imaginary(a) => commands::imaginary(a)?,
        Command::LargeN(a) => commands::large_n(a)?,
        Command::Figure(a) => figure::figure(a, out)?,
        Command::Verify(a) => {
            let (tables, failures) = verify::verify(a, out)?;
            output::emit(&tables, out)?;
            if failures > 0 {
                return Err(CliError::Failed(format!(
                    "{failures} invariant check(s) failed"
                )));
            }
            return Ok(());
        }
    };
    output::emit(&tables, out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
