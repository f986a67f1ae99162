//! Library side of the `corrpca` command: CSV ingestion, the analysis
//! pipeline, model simulation and the loadings check, each returning
//! plain data that the binary serializes.

pub mod dataset;
pub mod error;
pub mod report;
pub mod simulate;
pub mod verify;

pub use dataset::{ingest_csv, parse_csv, Dataset};
pub use error::{CliError, Result};
pub use report::{run_analysis, AnalysisReport, LabeledMatrix, Mode};
pub use simulate::{load_model, run_simulation, LoadedModel, SimulationSummary};
pub use verify::{run_verify, VerifyReport};
