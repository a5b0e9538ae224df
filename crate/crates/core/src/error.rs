use thiserror::Error;

/// Errors raised by the workbench operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no factors")]
    NoFactors,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("amplitude count {0} is not a power of two")]
    InvalidLength(usize),
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("all amplitudes are zero")]
    ZeroState,
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("analytic unavailable: derivative requires a multiplicative Hamiltonian")]
    AnalyticUnavailable,
    #[error("no information available: {0}")]
    NoInformation(String),
    #[error("measurement basis is not orthonormal (deviation {0:e})")]
    NonOrthonormalBasis(f64),
    #[error("every observed outcome is impossible under the model")]
    ImpossibleData,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
