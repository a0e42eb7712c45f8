use std::path::PathBuf;

use crate::model::ValidationIssue;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("triangular fuzzy number requires a <= b <= c, got ({a}, {b}, {c})")]
    OrderViolation { a: f64, b: f64, c: f64 },

    #[error("unknown term {code:?} in scale {scale:?}")]
    UnknownTerm { code: String, scale: String },

    #[error("invalid scale {scale:?}: {reason}")]
    InvalidScale { scale: String, reason: String },

    #[error("dataset has {} validation issue(s)", .0.len())]
    InvalidDataset(Vec<ValidationIssue>),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("decision matrix is empty")]
    EmptyMatrix,

    #[error("weight {index} must be finite and non-negative, got {value}")]
    InvalidWeight { index: usize, value: f64 },

    #[error("weight {index} must be finite and positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("alternative {alternative} has a zero value on cost criterion {criterion}")]
    ZeroOnCostCriterion { alternative: usize, criterion: usize },

    #[error("product score of alternative {alternative} is not a finite positive number")]
    NonFiniteScore { alternative: usize },

    #[error("value at row {row}, column {col} is not finite")]
    NonFiniteValue { row: usize, col: usize },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("schema violation at {pointer}: {message}")]
    SchemaViolation { pointer: String, message: String },

    #[error("criterion {criterion:?} references unknown scale {scale:?} (at {pointer})")]
    UnknownScaleReference {
        criterion: String,
        scale: String,
        pointer: String,
    },

    #[error("CSV header mismatch: expected [{}], got [{}]", .expected.join(","), .got.join(","))]
    HeaderMismatch { expected: Vec<String>, got: Vec<String> },

    #[error("unknown alternative {0:?}")]
    UnknownAlternative(String),

    #[error("unknown criterion {0:?}")]
    UnknownCriterion(String),

    #[error("{kind} {name:?} not found")]
    NotFound { kind: &'static str, name: String },

    #[error("invalid name {0:?}: use letters, digits, '-' or '_'")]
    InvalidName(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of the environment (missing files, permissions)
    /// rather than of the data itself.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaViolation {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
