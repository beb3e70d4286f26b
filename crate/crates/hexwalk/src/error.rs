use thiserror::Error;

use crate::lattice::MidEdge;

/// Crate-wide error type. Variants map onto the three failure classes the
/// command line reports: contract/validation errors, resource exhaustion,
/// and parse errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mid-edge coordinates ({0}, {1})")]
    InvalidMidEdge(i64, i64),

    #[error("invalid lattice-vertex coordinates ({0}, {1})")]
    InvalidVertex(i64, i64),

    #[error("mid-edges ({}, {}) and ({}, {}) are not adjacent", .0.xq, .0.yq, .1.xq, .1.yq)]
    NotAdjacent(MidEdge, MidEdge),

    #[error("walk invariant violated: {0}")]
    InvalidWalk(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("start mid-edge ({}, {}) lies outside the domain", .0.xq, .0.yq)]
    StartOutsideDomain(MidEdge),

    #[error("operation requires a bounded domain")]
    UnboundedDomain,

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("division by zero in Q(zeta_48)")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("concatenation rejected: {0}")]
    GmRejected(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI maps this error to (1 check failure is handled
    /// separately by the verify driver; errors here are 2 or 3).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 2,
            Error::Parse(_) | Error::Json(_) => 3,
            _ => 2,
        }
    }
}
