use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("data length {len} does not match {rows}x{cols}")]
    DataLength {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("diagonal entry {index} is {value}, must be strictly positive for this exponent")]
    NonPositiveDiagonal { index: usize, value: f64 },

    #[error("at least 2 observations are required, got {n}")]
    TooFewObservations { n: usize },

    #[error("samples have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("sample has zero variance")]
    ZeroVariance,

    #[error("column {column} has zero variance")]
    ZeroVarianceColumn { column: usize },

    #[error("data matrix is not standardized (column {column})")]
    NotStandardized { column: usize },

    #[error("entry ({row}, {col}) = {value} is outside [-1, 1]")]
    OutOfRange { row: usize, col: usize, value: f64 },

    #[error("matrix is not a valid correlation matrix: {reason}")]
    InvalidCorrelation { reason: String },

    #[error("eigenvalue {index} is {value}, correlation matrices must be positive semidefinite")]
    NegativeEigenvalue { index: usize, value: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("requested {k} components, must be between 1 and {max}")]
    ComponentCount { k: usize, max: usize },

    #[error("principal component {component} has zero variance")]
    ZeroVarianceComponent { component: usize },

    #[error("invalid loadings: {reason}")]
    InvalidLoadings { reason: String },

    #[error("simulation needs at least 2 samples, got {samples}")]
    TooFewSamples { samples: usize },
}
