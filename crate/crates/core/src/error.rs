use thiserror::Error;

/// Errors raised by constructors, measurements and the analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point is off the hyperboloid: <x,x> = {pairing} (expected -1)")]
    InvalidPoint { pairing: f64 },
    #[error("normal is not unit spacelike: <u,u> = {pairing}")]
    InvalidNormal { pairing: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("point lies outside the Klein model (|y| = {norm})")]
    OutsideModel { norm: f64 },
    #[error("degenerate body: {0}")]
    Degenerate(String),
    #[error("empty intersection: {0}")]
    Empty(String),
    #[error("hyperplane does not support the body (min signed distance residual {residual:e})")]
    NotSupporting { residual: f64 },
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("radius mismatch: |ca| = {ca}, |cb| = {cb}, expected {expected}")]
    RadiusMismatch { ca: f64, cb: f64, expected: f64 },
    #[error("point is not an extreme point of the body (residual {residual:e})")]
    NotExtreme { residual: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
