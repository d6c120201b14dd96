use std::path::PathBuf;
use thiserror::Error;

/// Errors surfaced by the simulator crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("composite dimension {dim} exceeds the configured cap {cap}")]
    DimensionOverflow { dim: usize, cap: usize },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("operator is not Hermitian (max |A - A\u{2020}| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("environment operator set is linearly dependent (min Gram eigenvalue {min_gram:.3e})")]
    LinearlyDependentEnvironment { min_gram: f64 },

    #[error("eigendecomposition failed: {0}")]
    EigenFailure(String),

    #[error("state norm drifted by {drift:.3e} at t = {t}")]
    NormDrift { t: f64, drift: f64 },

    #[error("no initial coherence in basis {basis}")]
    NoInitialCoherence { basis: String },

    #[error("interaction Hamiltonian has zero norm")]
    ZeroInteraction,

    #[error("regime classification unavailable: {0}")]
    ClassificationUnavailable(String),

    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the name of the pipeline stage it came from.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
