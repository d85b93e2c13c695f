use thiserror::Error;

/// Errors raised anywhere in the estimation stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "matrix is not Hermitian: max |h - h^dagger| entry is {max_asymmetry:e} (tolerance {tolerance:e})"
    )]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot factor dimension {dim} as {left} x {right}")]
    Factorization { dim: usize, left: usize, right: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid amplitude vector: {0}")]
    InvalidAmplitudes(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("spectrum of rho - rho' is not +/- paired (max mismatch {mismatch:e}); use the full variant")]
    UnpairedSpectrum { mismatch: f64 },

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
