use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid index set parameters: n = {n}, q = {q} (need n >= 1 and 0 <= q <= n - 1)")]
    InvalidIndexSet { n: usize, q: usize },

    #[error("q = {q} exceeds the cutoff {max} = floor(p n / (p + 1)) for n = {n}, p = {p}")]
    CutoffExceeded { n: usize, q: usize, p: usize, max: usize },

    #[error("order p must be positive")]
    ZeroOrder,

    #[error("multi-index must be nonempty")]
    EmptyIndex,

    #[error("dimension mismatch: expected {expected}x{expected}, found {found}")]
    DimensionMismatch { expected: usize, found: String },

    #[error("explicit formula needs {terms} product terms, above the limit of {limit}")]
    TermGuard { terms: u128, limit: u128 },

    #[error("power {k} exceeds the expansion limit of {limit}")]
    PowerGuard { k: usize, limit: usize },

    #[error("truncation size {got} too small, need at least {needed}")]
    TruncationTooSmall { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
