use thiserror::Error;

/// Errors surfaced by every public operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("z = {0} lies on the branch cut (1, inf); request a one-sided limit")]
    Cut(f64),

    #[error("index {index} out of range for {len} vectors")]
    Index { index: usize, len: usize },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("cross-ratio argument {0} lies in {{0, 1, inf}}")]
    CrossRatioDegenerate(String),

    #[error("point lies on a singular locus: {0}")]
    Singularity(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("non-generic input: {0}")]
    NonGeneric(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
