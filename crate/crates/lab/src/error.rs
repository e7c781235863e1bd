use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] rgspectra_core::Error),

    #[error("trial {trial} (n={n}, p={p}, seed={seed}): {source}")]
    Trial {
        n: usize,
        p: f64,
        trial: usize,
        seed: u64,
        #[source]
        source: rgspectra_core::Error,
    },

    #[error("statistic `{name}` is not finite in trial {trial} (n={n}, p={p})")]
    NonFinite {
        name: &'static str,
        n: usize,
        p: f64,
        trial: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported trial schema: {0}")]
    Schema(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LabError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        LabError::Csv {
            path: path.into(),
            source,
        }
    }
}
