mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::Status;

const EXIT_USAGE: u8 = 1;
const EXIT_ORACLE: u8 = 2;
const EXIT_IO: u8 = 3;

fn parse(args: &[OsString]) -> Result<Cli, ExitCode> {
    Cli::try_parse_from(args).map_err(|e| {
        let _ = e.print();
        if e.use_stderr() {
            ExitCode::from(EXIT_USAGE)
        } else {
            ExitCode::SUCCESS
        }
    })
}

fn is_io(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| cause.downcast_ref::<std::io::Error>().is_some())
}

fn fail(err: anyhow::Error) -> ExitCode {
    eprintln!("error: {err:#}");
    ExitCode::from(if is_io(&err) { EXIT_IO } else { EXIT_USAGE })
}

fn main() -> ExitCode {
    let mut args: Vec<OsString> = std::env::args_os().collect();
    if let Some((sub, path)) = config::locate(&args) {
        args = match config::merge(&args, &sub, &path) {
            Ok(merged) => merged,
            Err(err) => return fail(err),
        };
    }
    let cli = match parse(&args) {
        Ok(cli) => cli,
        Err(code) => return code,
    };

    let result = match &cli.command {
        Command::Resource(cmd) => commands::resource(cmd),
        Command::Distribution(cmd) => commands::distribution(cmd),
        Command::Fidelity(cmd) => commands::fidelity(cmd),
        Command::Sweep(cmd) => commands::sweep(cmd),
        Command::PhaseMap(cmd) => commands::phase_map(cmd),
        Command::OracleCheck(cmd) => commands::oracle(cmd),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::OracleFailed) => ExitCode::from(EXIT_ORACLE),
        Err(err) => fail(err),
    }
}
