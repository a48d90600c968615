use std::fmt;
use std::process::ExitCode;

use mpcorr_core::io::StateFileError;
use mpcorr_core::Error;
use serde_json::json;

/// A failed command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable input, malformed JSON, unwritable output. Exit 1.
    Parse(String),
    /// The input parsed but is not a valid state. Exit 2.
    Validation(Error),
    /// Valid state of a shape the command does not handle. Exit 3.
    Unsupported(String),
    /// Unknown family, parameter or output, or an out-of-domain grid. Exit 4.
    BadSpec(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::BadSpec(_) => 4,
        })
    }

    /// One-line JSON diagnostic for stderr.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Validation(e) => {
                let mut v = json!({"error": e.kind(), "message": e.to_string()});
                if let Some(r) = e.residual() {
                    v["residual"] = json!(r);
                }
                v
            }
            CliError::Parse(m) => json!({"error": "Parse", "message": m}),
            CliError::Unsupported(m) => json!({"error": "UnsupportedShape", "message": m}),
            CliError::BadSpec(m) => json!({"error": "BadSpec", "message": m}),
        }
    }

    /// Maps a library error raised while analyzing a state.
    pub fn from_analysis(e: Error) -> Self {
        match e {
            Error::UnsupportedShape(m) => CliError::Unsupported(m),
            e @ Error::DimensionTooLarge(_) => CliError::Unsupported(e.to_string()),
            e => CliError::Validation(e),
        }
    }

    /// Maps a library error raised while building a family member.
    pub fn from_spec(e: Error) -> Self {
        CliError::BadSpec(e.to_string())
    }
}

impl From<StateFileError> for CliError {
    fn from(e: StateFileError) -> Self {
        match e {
            StateFileError::Parse(m) => CliError::Parse(m),
            StateFileError::Invalid(e) => CliError::from_analysis(e),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Unsupported(m) | CliError::BadSpec(m) => f.write_str(m),
            CliError::Validation(e) => write!(f, "{e}"),
        }
    }
}
