//! Command-line front end: argument and config handling, CSV input, JSON and
//! CSV reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod report;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::{CliError, CliResult};
use crate::report::ReportEnvelope;

/// Parses the arguments (config file first, command line on top).
pub fn parse_args(raw: Vec<OsString>) -> Result<Cli, clap::Error> {
    let argv = match config::find_path(&raw) {
        Ok(Some(path)) => match config::load(&path) {
            Ok(extra) => config::splice(raw, extra),
            Err(e) => return Err(clap::Error::raw(clap::error::ErrorKind::Io, format!("{e}\n"))),
        },
        Ok(None) => raw,
        Err(e) => return Err(clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("{e}\n"))),
    };
    Cli::try_parse_from(argv)
}

/// Runs a parsed command and returns its report.
pub fn execute(cli: &Cli) -> CliResult<ReportEnvelope> {
    let payload = match &cli.command {
        Command::Stat(a) => commands::stat(a)?,
        Command::Efficiency(a) => commands::efficiency(a)?,
        Command::Simulate(a) => commands::simulate(a)?,
        Command::Green(a) => commands::green(a)?,
    };
    let config = match serde_json::to_value(&cli.command)? {
        serde_json::Value::Object(mut outer) => outer.remove(cli.command.name()).unwrap_or_default(),
        other => other,
    };
    Ok(ReportEnvelope::new(cli.command.name(), config, payload))
}

fn emit(cli: &Cli, envelope: &ReportEnvelope) -> CliResult<()> {
    let json = serde_json::to_string_pretty(envelope)?;
    match &cli.out {
        Some(path) => std::fs::write(path, json + "\n").map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{json}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other.map_err(|source| CliError::Io { path: "<stdout>".into(), source })?,
            }
        }
    }
    if let Some(path) = &cli.csv {
        table::write(&envelope.payload, path)?;
    }
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(raw: Vec<OsString>) -> i32 {
    let cli = match parse_args(raw) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { error::EXIT_VALIDATION } else { 0 };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match execute(&cli).and_then(|env| emit(&cli, &env)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
