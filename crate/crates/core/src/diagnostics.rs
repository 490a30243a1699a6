//! Structured advisory diagnostics.
//!
//! Physics operations never silently drop regime warnings (quasistatic
//! validity, dipolar approximation, Stark admissibility, near-degenerate
//! excitation); they push them into a [`Diagnostics`] sink owned by the
//! caller, which decides how to surface them.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Info,
}

/// One advisory message with a stable machine-readable code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Stable kebab-case identifier, e.g. `dipolar-approximation`.
    pub code: String,
    pub message: String,
}

/// Ordered collection of diagnostics emitted during an operation.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    entries: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn warn(&mut self, code: &str, message: impl Into<String>) {
        self.entries.push(Diagnostic {
            severity: Severity::Warning,
            code: code.to_string(),
            message: message.into(),
        });
    }

    pub fn info(&mut self, code: &str, message: impl Into<String>) {
        self.entries.push(Diagnostic {
            severity: Severity::Info,
            code: code.to_string(),
            message: message.into(),
        });
    }

    pub fn entries(&self) -> &[Diagnostic] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_code(&self, code: &str) -> bool {
        self.entries.iter().any(|d| d.code == code)
    }

    pub fn into_vec(self) -> Vec<Diagnostic> {
        self.entries
    }
}
