//! `dronecsa` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 mission failure.

mod args;
mod commands;
mod error;
mod manifest;
mod settings;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = dispatch(cli.command, &mut out).and_then(|()| out.flush().map_err(CliError::io("stdout")));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::GenSmear(a) => commands::execute(&a.resolve()?, a.out.as_deref(), out),
        Command::AnalyzeSmear(a) => commands::execute(&a.resolve()?, a.out.as_deref(), out),
        Command::Evaluate(a) => commands::execute(&a.resolve()?, a.out.as_deref(), out),
        Command::GenScene(a) => commands::execute(&a.resolve()?, a.out.as_deref(), out),
        Command::RunMission(a) => commands::execute(&a.resolve()?, a.out.as_deref(), out),
        Command::EntrySim(a) => commands::execute(&a.resolve()?, a.out.as_deref(), out),
        Command::Replay(a) => {
            let manifest = manifest::RunManifest::load(&a.manifest)?;
            commands::execute(&manifest.invocation, Some(&a.out), out)
        }
    }
}
