use thiserror::Error;

/// Errors produced by state construction, decomposition and the measures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator basis requires dimension >= 2, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("total Hilbert-space dimension {0} exceeds the supported maximum of {max}", max = crate::qstate::MAX_TOTAL_DIMENSION)]
    DimensionTooLarge(usize),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("state vector has zero norm")]
    ZeroVector,

    #[error("matrix is not Hermitian (max |rho - rho^dagger| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("trace is not one (|Tr rho - 1| = {residual:e})")]
    TraceNotOne { residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("invalid party selection: {0}")]
    InvalidParties(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Bloch vector norm {0} exceeds 1")]
    InvalidBlochVector(f64),

    #[error("state is mixed (purity {purity}); measure is defined for pure states only")]
    MixedStateUnsupported { purity: f64 },

    #[error("xi is undefined: |n_A . n_B| = {0:e} is too small")]
    DegenerateBlochVectors(f64),

    #[error("negative discriminant {0:e} in the explicit PH condition")]
    NegativeDiscriminant(f64),

    #[error("projection has vanishing weight {0:e}")]
    NullProjection(f64),

    #[error("imaginary residue {0:e} in a quantity that must be real")]
    ImaginaryResidue(f64),

    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
}

impl Error {
    /// Short machine-readable name used in JSON diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDimension(_) => "InvalidDimension",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DimensionTooLarge(_) => "DimensionTooLarge",
            Error::NotSquare { .. } => "NotSquare",
            Error::ZeroVector => "ZeroVector",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPsd { .. } => "NotPSD",
            Error::InvalidParties(_) => "InvalidParties",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::InvalidBlochVector(_) => "InvalidBlochVector",
            Error::MixedStateUnsupported { .. } => "MixedStateUnsupported",
            Error::DegenerateBlochVectors(_) => "DegenerateBlochVectors",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::NullProjection(_) => "NullProjection",
            Error::ImaginaryResidue(_) => "ImaginaryResidue",
            Error::MalformedDecomposition(_) => "MalformedDecomposition",
        }
    }

    /// Magnitude attached to validation failures, if any.
    pub fn residual(&self) -> Option<f64> {
        match *self {
            Error::NotHermitian { residual } | Error::TraceNotOne { residual } => Some(residual),
            Error::NotPsd { min_eigenvalue } => Some(min_eigenvalue),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
