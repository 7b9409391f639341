use thiserror::Error;

use crate::channel::RateViolations;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rates outside the CPTP region: {0}")]
    InvalidRates(RateViolations),

    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("invalid Kraus set: {0}")]
    InvalidKraus(String),

    #[error("channel is not invertible: {0}")]
    NotInvertible(String),
}
