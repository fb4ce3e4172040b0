//! Library surface of the batch experiment driver: argument types, the
//! command implementations, and deterministic table rendering. The binary
//! in `main.rs` is a thin wrapper so tests can drive commands in-process.

pub mod args;
pub mod commands;
pub mod parse;
pub mod table;

use std::fmt;
use std::io::Write;

pub use args::{Cli, Command, CommonArgs, OutputFormat};
pub use table::{Cell, Table};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or file contents; exit code 2.
    Config(String),
    /// A numerical invariant tripped; exit code 1.
    Numeric(psiball::Error),
    /// Output could not be written; exit code 1.
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Numeric(err) => write!(f, "numerical failure: {err}"),
            CliError::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<psiball::Error> for CliError {
    fn from(err: psiball::Error) -> Self {
        CliError::Numeric(err)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}

/// Runs one command to a rendered document.
pub fn execute(command: &Command) -> Result<Table, CliError> {
    commands::dispatch(command)
}

/// Runs one command and writes its output to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let table = execute(&cli.command)?;
    let common = cli.command.common();
    let rendered = table.render(common.format);
    match &common.out {
        Some(path) => std::fs::write(path, rendered).map_err(CliError::Io)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).map_err(CliError::Io)?;
        }
    }
    Ok(())
}
