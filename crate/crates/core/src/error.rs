use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("x outside interval: {x} not in [{a}, {b}]")]
    Domain { x: f64, a: f64, b: f64 },

    #[error("index {j} out of range for degree {n}")]
    Index { j: i64, n: i64 },

    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("degree {n} exceeds the supported maximum {max}")]
    DegreeCap { n: usize, max: usize },

    #[error("{0}")]
    Capability(String),

    #[error("non-finite integrand value at {at:?}")]
    Evaluation { at: Vec<f64> },

    #[error("zero pivot at index {0} during back-substitution")]
    Singular(usize),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
