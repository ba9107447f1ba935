use thiserror::Error;

/// Errors raised by the finite-volume laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid stencil: {0}")]
    InvalidStencil(String),

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid reconstruction configuration: {0}")]
    InvalidConfig(String),

    #[error("boundary condition not applicable: {0}")]
    Boundary(String),

    #[error("inadmissible state: rho = {rho}, p = {p}")]
    Inadmissible { rho: f64, p: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value in cell {cell} (component {component}) at step {step}")]
    NonFinite {
        cell: usize,
        component: usize,
        step: usize,
    },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
