use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible operands: dimension {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("phase modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("matrix is not unitary: ‖U·U† − I‖_F = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),

    #[error("singular matrix: σ_min/σ_max = {ratio:.3e}")]
    Singular { ratio: f64 },

    #[error("not a phased cyclic shift: {0}")]
    NotPhasedShift(String),

    #[error("block ({row}, {col}) is not circulant")]
    NotCirculant { row: usize, col: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
