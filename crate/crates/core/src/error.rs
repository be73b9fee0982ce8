//! Crate-wide error type.

use thiserror::Error;

use crate::channels::ChannelKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {len} does not match {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    #[error("matrix entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrices have incompatible dimensions {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("{kind:?} is not a Pauli channel")]
    NotPauliChannel { kind: ChannelKind },

    #[error("invalid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("Kraus completeness residual {residual:.3e} exceeds {tol:.3e}")]
    IncompleteKraus { residual: f64, tol: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("closed-form eigenvalue {0:.6e} is significantly negative")]
    ClosedFormNegativeLambda(f64),

    #[error("closed-form expression is not finite at this point")]
    ClosedFormNotFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
