//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TfError {
    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("tau = {0} outside [0, 1]")]
    TauOutOfRange(f64),

    #[error("tau = {0} must lie strictly inside (0, 1)")]
    TauEndpoint(f64),

    #[error("window signal is identically zero")]
    ZeroWindow,

    #[error("exponent {0} must satisfy p >= 1 (or be infinite)")]
    InvalidExponent(f64),

    #[error("invalid weight parameter: {0}")]
    InvalidWeight(String),

    #[error("symbol grid incompatible with operator grid")]
    SymbolGridIncompatible,

    #[error("adjoint identity requires a real-valued symbol")]
    ComplexSymbol,

    #[error("point ({0}, {1}) is not aligned with the sampling grid")]
    OffGridPoint(f64, f64),

    #[error("probe family is degenerate (all probes had zero norm)")]
    DegenerateProbes,
}

pub type Result<T> = std::result::Result<T, TfError>;
