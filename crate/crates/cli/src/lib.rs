//! Command-line front end: scenario ingestion, presets, spectra, sweeps,
//! parameter reports, validation.
//!
//! Exit codes: 0 success, 2 input/schema error, 3 physics error,
//! 4 validation failure, 1 unexpected I/O failure.

use std::fmt;

use tinp_core::error::PhysicsError;

pub mod commands;
pub mod output;
pub mod presets;
pub mod scenario_file;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: parse failures, unknown keys, missing fields, bad
    /// units, invalid grids.
    Schema(String),
    /// A physical precondition failed (pole, invalid regime, separation
    /// inside the particle).
    Physics(PhysicsError),
    /// The validation suite ran and at least one check failed.
    Validation(String),
    /// Output I/O failure.
    Io(std::io::Error),
}

impl CliError {
    pub fn schema(msg: impl Into<String>) -> Self {
        CliError::Schema(msg.into())
    }

    /// Constructor-level physics errors raised while ingesting a file are
    /// input errors: the file asked for an unrepresentable object.
    pub fn schema_from_physics(e: PhysicsError) -> Self {
        CliError::Schema(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Physics(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(msg) => write!(f, "input error: {msg}"),
            CliError::Physics(e) => write!(f, "physics error: {e}"),
            CliError::Validation(msg) => write!(f, "validation failed: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<PhysicsError> for CliError {
    fn from(e: PhysicsError) -> Self {
        CliError::Physics(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
