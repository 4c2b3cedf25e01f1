use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Schema violation; `path` locates the offending field, e.g.
    /// `parameters.space.exponent`.
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("{0}")]
    Module(#[from] rbound_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config { path: path.into(), message: message.into() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "config-error",
            CliError::Module(e) => e.kind(),
            CliError::Io { .. } => "io-error",
        }
    }

    /// Exit status: 2 for bad input, 1 for failed computations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::Io { .. } => 2,
            CliError::Module(_) => 1,
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> Value {
        let mut e = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Config { path, .. } = self {
            e["path"] = json!(path);
        }
        json!({ "error": e })
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
