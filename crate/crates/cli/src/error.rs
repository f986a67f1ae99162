use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{source_name}: line {line}: {message}")]
    Parse {
        source_name: String,
        line: u64,
        message: String,
    },

    #[error("{source_name}: line {line}, column '{column}': '{value}' is not a number")]
    NonNumeric {
        source_name: String,
        line: u64,
        column: String,
        value: String,
    },

    #[error("{source_name}: line {line}, column '{column}': empty cell (missing values are not supported)")]
    EmptyCell {
        source_name: String,
        line: u64,
        column: String,
    },

    #[error("{0}")]
    InvalidData(String),

    #[error("column '{name}' has zero variance")]
    ZeroVarianceColumn { name: String },

    #[error("invalid model: {0}")]
    Model(String),

    #[error("numerical failure: {0}")]
    Numerical(corrpca_core::Error),

    #[error("loadings differ from direct correlations by {deviation:e} (tolerance {tolerance:e})")]
    Verification { deviation: f64, tolerance: f64 },
}

impl CliError {
    /// 1 usage, 2 data, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) | CliError::Verification { .. } => 3,
            _ => 2,
        }
    }

    /// Attaches column names to library errors that carry an index.
    pub(crate) fn from_core(err: corrpca_core::Error, names: &[String]) -> Self {
        use corrpca_core::Error as E;
        let name = |j: usize| {
            names
                .get(j)
                .cloned()
                .unwrap_or_else(|| format!("#{}", j + 1))
        };
        match err {
            E::ZeroVarianceColumn { column } => CliError::ZeroVarianceColumn { name: name(column) },
            E::NoConvergence { .. }
            | E::NegativeEigenvalue { .. }
            | E::OutOfRange { .. }
            | E::ZeroVarianceComponent { .. }
            | E::NonFinite { .. } => CliError::Numerical(err),
            E::InvalidLoadings { reason } => CliError::Model(reason),
            other => CliError::InvalidData(other.to_string()),
        }
    }
}
