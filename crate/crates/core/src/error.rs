use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("the zero polynomial has no roots to count or isolate")]
    ZeroPolynomial,

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("index not normal for this family/parameters: {0}")]
    NotNormal(String),

    #[error("unsupported operation for this family: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("root iteration did not converge after {iterations} sweeps")]
    NoConvergence {
        iterations: usize,
        partial: Vec<(f64, f64)>,
    },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
