use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("operator is not {kind}: {detail}")]
    InvalidOperator { kind: &'static str, detail: String },

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("phase undefined: {0}")]
    UndefinedPhase(String),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error(
        "Fock truncation at n_max = {n_max} leaves tail {tail:e}, above tolerance {tolerance:e}"
    )]
    TruncationInadequate {
        n_max: usize,
        tail: f64,
        tolerance: f64,
    },

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("grid does not match formula {0}")]
    GridMismatch(String),
}
