use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across data loading, model fitting, and evaluation.
#[derive(Debug, Error)]
pub enum UpliftError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("row {row}: {message}")]
    InvalidRow { row: usize, message: String },

    #[error("{0} group empty")]
    EmptyGroup(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("split `{split}` has no {group} records; re-seed or use more data")]
    DegenerateSplit {
        split: &'static str,
        group: &'static str,
    },

    #[error("bin {bin} has no {group} records; use fewer bins")]
    EmptyBin { bin: usize, group: &'static str },

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("no convergence after {iterations} iterations (gradient norm {gradient_norm:e})")]
    NotConverged {
        iterations: usize,
        gradient_norm: f64,
    },

    #[error("all {} candidates failed: {}", .0.len(), .0.join("; "))]
    AllCandidatesFailed(Vec<String>),
}

impl UpliftError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        UpliftError::Io {
            path: path.into(),
            source,
        }
    }

    /// Coarse category used by the command-line front end to pick an exit code.
    pub fn is_fit_error(&self) -> bool {
        matches!(
            self,
            UpliftError::Fit(_)
                | UpliftError::NotConverged { .. }
                | UpliftError::AllCandidatesFailed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, UpliftError>;
