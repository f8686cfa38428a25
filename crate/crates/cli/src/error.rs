use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 3,
            CliError::Input(_) => 4,
            CliError::Internal(_) => 5,
        })
    }

    /// Tags an error with the stage that raised it.
    pub fn in_stage(self, stage: &str) -> Self {
        match self {
            CliError::Config(m) => CliError::Config(format!("[{stage}] {m}")),
            CliError::Input(m) => CliError::Input(format!("[{stage}] {m}")),
            CliError::Internal(m) => CliError::Internal(format!("[{stage}] {m}")),
        }
    }
}

impl From<newswire::Error> for CliError {
    fn from(e: newswire::Error) -> Self {
        use newswire::Error as E;
        let msg = e.to_string();
        match e {
            E::Config(_) => CliError::Config(msg),
            E::Io { .. }
            | E::Date { .. }
            | E::EmbeddingFormat { .. }
            | E::DimensionMismatch { .. }
            | E::NotUnitNorm { .. }
            | E::EmptyText
            | E::MissingEmbedding(_)
            | E::SpanOutOfBounds { .. }
            | E::DegenerateLabels(_)
            | E::UniverseMismatch(_)
            | E::EmptyInput(_)
            | E::Csv { .. }
            | E::Json(_) => CliError::Input(msg),
            E::InvalidPartition(_) => CliError::Internal(msg),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
