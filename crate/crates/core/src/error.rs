use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("rank parameter n = {got} is too small (need at least {min})")]
    RankTooSmall { got: usize, min: usize },

    #[error("basis is not orthonormal (Gram deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("matrix does not have unit determinant (|det - 1| = {0:e})")]
    NotSpecialUnitary(f64),

    #[error("eigensolver failed")]
    Eigensolver,

    #[error("degenerate angles: minimum gap {gap:e} does not exceed {required:e}")]
    Degenerate { gap: f64, required: f64 },

    #[error("not a vertical algebra element: {0}")]
    NotVertical(String),

    #[error("not a horizontal algebra element: {0}")]
    NotHorizontal(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid stencil: {0}")]
    InvalidStencil(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
