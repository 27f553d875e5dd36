use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("degenerate line: defining points coincide")]
    DegenerateLine,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid Lawrence heights: need 0 < h1 < h2, got h1 = {h1}, h2 = {h2}")]
    InvalidHeights { h1: String, h2: String },
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no intersection: {0}")]
    NoIntersection(String),
    #[error("graph too small: {0} vertices, need at least 4")]
    TooSmall(usize),
    #[error("graph is not 3-polytopal: {0}")]
    NotPolytopal(String),
    #[error("configuration degenerate: {0}")]
    ConfigurationDegenerate(String),
    #[error("placement failed: {0}")]
    PlacementFailure(String),
    #[error("point is not on the line of the scale")]
    NotCollinear,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("not a primary system: {0} non-strict inequalities")]
    NotPrimary(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
