use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] nodal_mirror::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Engine(nodal_mirror::Error::Parse(_) | nodal_mirror::Error::Precondition(_) | nodal_mirror::Error::Shape(_)) => "usage",
            CliError::Engine(_) => "engine",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
        }
    }

    /// Malformed input exits with 2; anything else is an internal failure.
    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            "usage" | "json" => 2,
            _ => 4,
        }
    }
}
