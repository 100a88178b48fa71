use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed scenario file: {0}")]
    Parse(String),

    #[error("invalid scenario at `{path}`: {message}")]
    Validation { path: String, message: String },

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: gemenge_core::Error,
    },

    #[error("report serialization failed: {0}")]
    Serialization(String),

    #[error("unknown demo `{name}` (available: {available})")]
    UnknownDemo { name: String, available: String },
}

impl Error {
    pub(crate) fn validation(path: &str, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Tags a core error with the pipeline stage that produced it.
pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for gemenge_core::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|source| Error::Stage { stage, source })
    }
}
