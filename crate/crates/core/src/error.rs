//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {reason}")]
    Validation { reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("elements belong to different spaces")]
    SpaceMismatch,

    #[error("operation requires a unit-norm element, got norm {norm}")]
    Unnormalized { norm: String },

    #[error("undecided: slack {slack} lies inside the tolerance band {tol}")]
    Undecided { slack: f64, tol: f64 },

    #[error("interval is empty")]
    EmptyInterval,

    #[error("unbounded polyhedron where a polytope is required")]
    Unbounded,

    #[error("zero element not allowed here")]
    ZeroElement,

    #[error("operation not supported on the {backend} backend: {detail}")]
    UnsupportedBackend { backend: String, detail: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("route disagreement in {op}: {detail}")]
    RouteDisagreement { op: String, detail: String },

    #[error("theorem violation in {op}: {detail}")]
    TheoremViolation { op: String, detail: String },
}

impl Error {
    /// Exit code the CLI maps this error to: 2 is the bug trap for route
    /// disagreements and theorem-suite failures, 1 everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RouteDisagreement { .. } | Error::TheoremViolation { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
