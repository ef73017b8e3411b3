use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("polar angle {0} outside [0, pi]")]
    ThetaOutOfRange(f64),

    #[error("equator overlap formula requires theta0 = pi/2, got {0}")]
    NotEquator(f64),

    #[error("distribution not normalized: total {total} (tolerance {tolerance})")]
    Unnormalized { total: f64, tolerance: f64 },

    #[error("Wigner trace has imaginary residue {0}; density matrix is not Hermitian")]
    ImaginaryResidue(f64),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}
