use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial has no root set")]
    ZeroPolynomial,

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("supertile too large: rho^{n}([0]) has {len} letters, cap is {cap}")]
    SupertileTooLarge { n: usize, len: String, cap: usize },

    #[error("root isolation: {0}")]
    RootIsolation(String),

    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),

    #[error("indeterminate modulus; raise precision (root {0})")]
    IndeterminateModulus(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("vector is not in V: {0}")]
    NotInV(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("all-cancelling combination")]
    AllCancelling,

    #[error("coefficient not identifiable below Catalan scale (|lambda*| = {0} <= 2)")]
    NotIdentifiable(String),

    #[error("no stabilising eigenvector at -2 for {0}")]
    NoEigenvalueAtTwo(String),

    #[error("insufficient window: {0}")]
    InsufficientWindow(String),

    #[error("fit failed: {reason} at n = {}", list_indices(.indices))]
    Fit { reason: String, indices: Vec<usize> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn list_indices(ix: &[usize]) -> String {
    let shown: Vec<String> = ix.iter().take(8).map(|i| i.to_string()).collect();
    if ix.len() > 8 {
        format!("{}, ... ({} in total)", shown.join(", "), ix.len())
    } else {
        shown.join(", ")
    }
}
