use std::fmt;

use serde_json::{json, Map, Value};

/// Failure of a run, split by exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, config or parameter values (exit 2).
    Validation { parameter: Option<String>, message: String, location: Option<(usize, usize)> },
    /// The inputs were valid but the run failed (exit 3).
    Runtime { message: String },
}

impl CliError {
    pub fn param(name: &str, message: impl Into<String>) -> Self {
        Self::Validation { parameter: Some(name.to_string()), message: message.into(), location: None }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::Validation { parameter: None, message: message.into(), location: None }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self::Runtime { message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation { .. } => 2,
            Self::Runtime { .. } => 3,
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        match self {
            Self::Validation { parameter, message, location } => {
                m.insert("error".into(), json!("validation"));
                if let Some(p) = parameter {
                    m.insert("parameter".into(), json!(p));
                }
                if let Some((line, column)) = location {
                    m.insert("line".into(), json!(line));
                    m.insert("column".into(), json!(column));
                }
                m.insert("message".into(), json!(message));
            }
            Self::Runtime { message } => {
                m.insert("error".into(), json!("runtime"));
                m.insert("message".into(), json!(message));
            }
        }
        Value::Object(m).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Validation { parameter: Some(p), message, .. } => write!(f, "parameter '{p}': {message}"),
            Self::Validation { message, .. } | Self::Runtime { message } => f.write_str(message),
        }
    }
}

impl std::error::Error for CliError {}

/// Library errors during execution. Precondition failures the CLI could not
/// check up front still count as validation errors.
impl From<qmetro_core::Error> for CliError {
    fn from(e: qmetro_core::Error) -> Self {
        use qmetro_core::Error as E;
        match e {
            E::InvalidParameter { name, reason } => Self::param(name, reason),
            E::NoInformation(msg) => Self::validation(msg),
            other => Self::runtime(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
