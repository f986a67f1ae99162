//! The `simulate` subcommand: draw data from a saved factor model.

use std::fs;
use std::path::Path;

use corrpca_core::{
    correlation_matrix, covariance_matrix, implied_correlation, simulate, FactorModel64,
    LoadingsMatrix64,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::report::{AnalysisReport, LabeledMatrix};

/// A factor model together with its variable names.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub variables: Vec<String>,
    pub model: FactorModel64,
}

/// Reads loadings from a labeled CSV, an analysis report, or a bare
/// labeled matrix in JSON. With `reduced`, a report contributes its
/// truncated loadings instead of the full matrix.
pub fn load_model(path: &Path, reduced: bool) -> Result<LoadedModel> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let labeled = if is_json {
        match AnalysisReport::from_json(&text) {
            Ok(report) if reduced => report.reduced_loadings.ok_or_else(|| {
                CliError::Model("report has no reduced loadings; run analyze with --mode fa".into())
            })?,
            Ok(report) => report.loadings,
            Err(_) => serde_json::from_str::<LabeledMatrix>(&text)
                .map_err(|e| CliError::Model(format!("{}: {e}", path.display())))?,
        }
    } else {
        LabeledMatrix::from_csv(&text)?
    };
    let loadings =
        LoadingsMatrix64::new(labeled.to_matrix()?).map_err(|e| CliError::Model(e.to_string()))?;
    let model = FactorModel64::new(loadings).map_err(|e| CliError::Model(e.to_string()))?;
    Ok(LoadedModel {
        variables: labeled.row_labels,
        model,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub samples: usize,
    pub seed: u64,
    pub k: usize,
    pub communalities: Vec<f64>,
    /// Largest gap between the sample correlation and the model correlation,
    /// where the model covariance `L′L′ᵀ` is rescaled by the communalities.
    /// Absent when some variable has zero modeled variance.
    pub max_correlation_deviation: Option<f64>,
    /// Largest gap between the sample covariance and `L′L′ᵀ`.
    pub max_covariance_deviation: f64,
}

/// Simulates `samples` rows, writes them as CSV to `out`, and compares
/// the sample moments with the model.
pub fn run_simulation(
    loaded: &LoadedModel,
    samples: usize,
    seed: u64,
    out: &Path,
) -> Result<SimulationSummary> {
    if samples < 2 {
        return Err(CliError::Usage(format!(
            "--samples must be at least 2, got {samples}"
        )));
    }
    let names = &loaded.variables;
    let x = simulate(&loaded.model, samples, seed).map_err(|e| CliError::from_core(e, names))?;
    fs::write(out, data_csv(names, x.observations().row_vecs())).map_err(|source| {
        CliError::Io {
            path: out.to_path_buf(),
            source,
        }
    })?;

    let implied = implied_correlation(&loaded.model);
    let covariance = covariance_matrix(&x);
    let communalities = loaded.model.communalities();
    let max_covariance_deviation = covariance.max_abs_diff(&implied).expect("same order");

    let max_correlation_deviation = if communalities.iter().all(|&c| c > 1e-12) {
        let sample_r = correlation_matrix(&x).map_err(|e| CliError::from_core(e, names))?;
        let m = communalities.len();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let target = implied.get(i, j) / (communalities[i] * communalities[j]).sqrt();
                worst = worst.max((sample_r.matrix().get(i, j) - target).abs());
            }
        }
        Some(worst)
    } else {
        None
    };

    Ok(SimulationSummary {
        samples,
        seed,
        k: loaded.model.k(),
        communalities,
        max_correlation_deviation,
        max_covariance_deviation,
    })
}

fn data_csv(names: &[String], rows: Vec<Vec<f64>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(names).expect("in-memory write");
    for row in rows {
        writer
            .write_record(row.iter().map(f64::to_string))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}
