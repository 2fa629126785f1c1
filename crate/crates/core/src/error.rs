use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("map is not invertible: {0}")]
    NonInvertibleMap(String),

    #[error("invalid target: {0}")]
    Validation(String),

    #[error("Calabi-Yau column identity fails in row {row}: columns sum to {columns}, multi-degrees sum to {degrees}")]
    CalabiYau { row: usize, columns: i64, degrees: i64 },

    #[error("extension is not invertible: degree-2 classes {classes:?} appear in the mirror map without a coordinate (witness classes d = {witnesses:?})")]
    NonInvertibleExtension { classes: Vec<String>, witnesses: Vec<Vec<u32>> },

    #[error("generating function extraction is inconsistent at {monomial}: {first} vs {second}")]
    ExtractionInconsistency { monomial: String, first: String, second: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::CalabiYau { .. } => 2,
            Error::NonInvertibleExtension { .. } => 3,
            _ => 4,
        }
    }
}
