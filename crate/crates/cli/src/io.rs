//! File loading, output and the exit-code mapping.

use std::fmt;
use std::fs;
use std::path::Path;

use safemem::format::{ArenaSpec, AutomatonSpec};
use safemem::model::{Arena, SafetyAutomaton};
use safemem::residual::minimize;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A failed command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Eve loses, or no strategy within the requested bound exists.
    Lose(String),
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Lose(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lose(m) => write!(f, "{m}"),
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<safemem::Error> for CliError {
    fn from(e: safemem::Error) -> Self {
        match e {
            safemem::Error::Internal(_) => CliError::Internal(e.to_string()),
            safemem::Error::NotWinning(_) => CliError::Lose(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_json(path, &text)
}

pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_arena(path: &Path) -> CliResult<Arena> {
    let spec: ArenaSpec = read_json(path)?;
    spec.to_arena().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// The objective as written, before minimization.
pub fn load_objective_raw(path: &Path) -> CliResult<SafetyAutomaton> {
    let spec: AutomatonSpec = read_json(path)?;
    spec.to_automaton().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_objective(path: &Path) -> CliResult<SafetyAutomaton> {
    Ok(minimize(&load_objective_raw(path)?)?)
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
