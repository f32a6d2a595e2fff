use thiserror::Error;

/// Errors raised by the model and math layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid request {id}: {reason}")]
    InvalidRequest { id: u64, reason: String },
    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),
    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParam { key: &'static str, reason: String },
}

/// Errors surfaced by configuration loading and the command front end.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid config value `{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

impl From<ModelError> for ConfigError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidParam { key, reason } => ConfigError::Invalid { key: format!("params.{key}"), reason },
            ModelError::InvalidTopology(reason) => ConfigError::Invalid { key: "topology".into(), reason },
            other => ConfigError::Invalid { key: "request".into(), reason: other.to_string() },
        }
    }
}

/// Raised by the exhaustive solver when an instance exceeds its limits.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("instance too large: {what} = {got} exceeds limit {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}
