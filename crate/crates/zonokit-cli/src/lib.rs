//! Library side of the CLI: the scenario-based benchmark runner and report
//! formatting. The binary in `main.rs` wraps these together with file I/O.

pub mod bench;

use std::fmt;

/// Terminal error with the process exit code it maps to: 2 for malformed
/// input or arguments, 1 for internal failures.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<zonokit::Error> for CliError {
    fn from(e: zonokit::Error) -> Self {
        use zonokit::Error::*;
        match e {
            DimensionMismatch { .. } | InvalidDimension(_) | ZeroDirection | NonFinite(_)
            | DegenerateZonotope(_) | TooManyGenerators { .. } | InvalidScenario(_)
            | InvalidDocument(_) => CliError::input(e.to_string()),
            NumericalFailure(_) | InconsistentEnumeration { .. } | Unbounded | EmptySet => {
                CliError::internal(e.to_string())
            }
        }
    }
}
