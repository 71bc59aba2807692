//! File IO, report schemas, and the CLI error type with its exit-code map.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use chsh_lab::Error as CoreError;

/// Exit codes: 2 retry exhaustion (and clap usage errors), 3 dimension
/// mismatch, 4 unreadable or invalid input files, 5 massless lattice.
#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    BadInput { path: String, message: String },
    Io(std::io::Error),
    RetriesExhausted { attempts: usize },
    AgreementFailed { difference: f64 },
    BadFlag(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::BadInput { path, message } => write!(f, "cannot use {path}: {message}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::RetriesExhausted { attempts } => write!(
                f,
                "sampled projections kept commuting after {attempts} attempts"
            ),
            CliError::AgreementFailed { difference } => {
                write!(f, "pullback sides disagree by {difference:e}")
            }
            CliError::BadFlag(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::RetriesExhausted { .. } => 2,
            CliError::Core(CoreError::DimensionMismatch { .. }) => 3,
            CliError::BadInput { .. } => 4,
            CliError::Core(CoreError::MasslessUnsupported { .. }) => 5,
            CliError::BadFlag(_) => 2,
            _ => 1,
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::BadInput {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::BadInput {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline; deterministic for fixed input.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, text)?;
    Ok(())
}
