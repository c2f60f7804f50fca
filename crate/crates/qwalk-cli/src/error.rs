//! Error channel of the command-line tool: every failure is reported
//! as a single stderr line and mapped to an exit code. Configuration
//! and other input problems exit with 1, runtime failures with 2.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad command line or configuration file.
    Config(String),
    /// Engine error; input-shaped problems count as configuration.
    Core(qwalk_core::Error),
    /// Filesystem failure while reading input or writing results.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Core(e) if e.is_input_error() => 1,
            CliError::Core(_) => 2,
            CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "error[config]: {msg}"),
            CliError::Core(e) if e.is_input_error() => write!(f, "error[config]: {e}"),
            CliError::Core(e) => write!(f, "error[numeric]: {e}"),
            CliError::Io(msg) => write!(f, "error[io]: {msg}"),
        }
    }
}

impl From<qwalk_core::Error> for CliError {
    fn from(e: qwalk_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
