use std::path::PathBuf;

use thiserror::Error;

use weyl_laplace::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 check or internal failure, 2 usage, 3 input validation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Output { .. } => 1,
            CliError::Core(e) => match e {
                CoreError::RankTooSmall { .. }
                | CoreError::InvalidPartition(_)
                | CoreError::InvalidStencil(_)
                | CoreError::Unsupported(_)
                | CoreError::IndexOutOfRange { .. } => 2,
                CoreError::NotUnitary(_)
                | CoreError::NotSpecialUnitary(_)
                | CoreError::InvalidMatrix(_)
                | CoreError::Json(_)
                | CoreError::DimensionMismatch { .. }
                | CoreError::Degenerate { .. }
                | CoreError::NotVertical(_)
                | CoreError::NotHorizontal(_)
                | CoreError::NotOrthonormal(_) => 3,
                CoreError::Eigensolver => 1,
            },
        }
    }
}
