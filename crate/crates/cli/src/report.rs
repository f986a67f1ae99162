//! The `analyze` pipeline and its JSON / CSV outputs.

use std::fmt;
use std::fs;
use std::path::Path;

use corrpca_core::{
    aggregate_explained_variance, component_common_variance, correlation_matrix, eigen_decompose,
    factor_loadings, implied_correlation, principal_components, reduce_loadings, reduce_via_p,
    select_k, standardize_columns, Matrix64,
};
use serde::{Deserialize, Serialize};

pub use corrpca_core::pca::DEFAULT_THRESHOLD;

use crate::dataset::Dataset;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pca,
    Fa,
}

impl Mode {
    /// Column label prefix: `PC1..` or `F1..`.
    pub fn prefix(self) -> &'static str {
        match self {
            Mode::Pca => "PC",
            Mode::Fa => "F",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Pca => "pca",
            Mode::Fa => "fa",
        })
    }
}

/// A matrix with row and column labels, as written to JSON and CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl LabeledMatrix {
    pub fn new(matrix: &Matrix64, row_labels: Vec<String>, column_labels: Vec<String>) -> Self {
        debug_assert_eq!(row_labels.len(), matrix.rows());
        debug_assert_eq!(column_labels.len(), matrix.cols());
        Self {
            row_labels,
            column_labels,
            values: matrix.row_vecs(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix64> {
        if self.values.len() != self.row_labels.len()
            || self
                .values
                .iter()
                .any(|r| r.len() != self.column_labels.len())
        {
            return Err(CliError::Model("labels do not match matrix shape".into()));
        }
        Matrix64::from_rows(&self.values).map_err(|e| CliError::Model(e.to_string()))
    }

    /// Header row, then one row per matrix row led by its label.
    pub fn to_csv(&self, corner: &str) -> String {
        let mut out = String::new();
        out.push_str(&csv_field(corner));
        for c in &self.column_labels {
            out.push(',');
            out.push_str(&csv_field(c));
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&self.values) {
            out.push_str(&csv_field(label));
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let bad = |e: csv::Error| CliError::Model(e.to_string());
        let headers = reader.headers().map_err(bad)?.clone();
        let column_labels: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut row_labels = Vec::new();
        let mut values = Vec::new();
        for record in reader.records() {
            let record = record.map_err(bad)?;
            let mut cells = record.iter();
            row_labels.push(cells.next().unwrap_or_default().to_string());
            let row = cells
                .map(|c| {
                    c.parse::<f64>()
                        .map_err(|_| CliError::Model(format!("'{c}' is not a number")))
                })
                .collect::<Result<Vec<f64>>>()?;
            values.push(row);
        }
        Ok(Self {
            row_labels,
            column_labels,
            values,
        })
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn component_labels(mode: Mode, k: usize) -> Vec<String> {
    (1..=k).map(|j| format!("{}{j}", mode.prefix())).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub mode: Mode,
    pub source: String,
    pub variables: Vec<String>,
    pub n_observations: usize,
    pub threshold: f64,
    pub selected_k: usize,
    pub correlation: LabeledMatrix,
    pub eigenvalues: Vec<f64>,
    /// Indices `i` with `|λ_i - λ_{i+1}| < 1e-8`.
    pub degenerate_eigenvalue_pairs: Vec<usize>,
    pub loadings: LabeledMatrix,
    pub common_variance: LabeledMatrix,
    pub per_variable_communality_at_k: Vec<f64>,
    pub aggregate_explained_variance: Vec<f64>,
    /// `P′`, pca mode only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_components: Option<LabeledMatrix>,
    /// `L′`, fa mode only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_loadings: Option<LabeledMatrix>,
    /// `L′L′ᵀ`, fa mode only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implied_correlation: Option<LabeledMatrix>,
}

/// standardize → correlation → eigen → loadings → common variance → k.
pub fn run_analysis(dataset: &Dataset, threshold: f64, mode: Mode) -> Result<AnalysisReport> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(CliError::Usage(format!(
            "threshold must be in (0, 1], got {threshold}"
        )));
    }
    let names = &dataset.column_names;
    let core = |e| CliError::from_core(e, names);

    let z = standardize_columns(&dataset.data).map_err(core)?;
    let r = correlation_matrix(&z).map_err(core)?;
    let decomp = eigen_decompose(&r).map_err(core)?;
    let loadings = factor_loadings(&decomp);
    let common = component_common_variance(&loadings);
    let k = select_k(&common, threshold);
    let m = dataset.n_variables();

    let labels = component_labels(mode, m);
    let mut report = AnalysisReport {
        mode,
        source: dataset.source_path.clone(),
        variables: names.clone(),
        n_observations: dataset.n_observations(),
        threshold,
        selected_k: k,
        correlation: LabeledMatrix::new(r.matrix(), names.clone(), names.clone()),
        eigenvalues: decomp.eigenvalues().to_vec(),
        degenerate_eigenvalue_pairs: decomp.degenerate_pairs(),
        loadings: LabeledMatrix::new(loadings.matrix(), names.clone(), labels.clone()),
        common_variance: LabeledMatrix::new(common.matrix(), names.clone(), labels.clone()),
        per_variable_communality_at_k: common.cumulative_rows(k),
        aggregate_explained_variance: aggregate_explained_variance(decomp.eigenvalues()),
        reduced_components: None,
        reduced_loadings: None,
        implied_correlation: None,
    };

    match mode {
        Mode::Pca => {
            let p = principal_components(&z, decomp.u()).map_err(core)?;
            let reduced = reduce_via_p(&p, k).map_err(core)?;
            let rows = (1..=dataset.n_observations())
                .map(|i| i.to_string())
                .collect();
            report.reduced_components = Some(LabeledMatrix::new(
                reduced.matrix(),
                rows,
                labels[..k].to_vec(),
            ));
        }
        Mode::Fa => {
            let model = reduce_loadings(&loadings, k).map_err(core)?;
            report.reduced_loadings = Some(LabeledMatrix::new(
                model.loadings().matrix(),
                names.clone(),
                labels[..k].to_vec(),
            ));
            report.implied_correlation = Some(LabeledMatrix::new(
                &implied_correlation(&model),
                names.clone(),
                names.clone(),
            ));
        }
    }
    Ok(report)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Model(e.to_string()))
    }

    /// Writes one CSV per matrix into `dir` and returns the file names.
    pub fn export_csv(&self, dir: &Path) -> Result<Vec<String>> {
        let io = |source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        };
        fs::create_dir_all(dir).map_err(io)?;
        let mut files: Vec<(&str, &LabeledMatrix, &str)> = vec![
            ("correlation.csv", &self.correlation, "variable"),
            ("loadings.csv", &self.loadings, "variable"),
            ("common_variance.csv", &self.common_variance, "variable"),
        ];
        if let Some(p) = &self.reduced_components {
            files.push(("reduced_components.csv", p, "observation"));
        }
        if let Some(l) = &self.reduced_loadings {
            files.push(("reduced_loadings.csv", l, "variable"));
        }
        if let Some(c) = &self.implied_correlation {
            files.push(("implied_correlation.csv", c, "variable"));
        }
        let mut written = Vec::new();
        for (name, matrix, corner) in files {
            let path = dir.join(name);
            fs::write(&path, matrix.to_csv(corner))
                .map_err(|source| CliError::Io { path, source })?;
            written.push(name.to_string());
        }
        let mut eig = String::from("component,eigenvalue,cumulative_explained_variance\n");
        for (j, (l, c)) in self
            .eigenvalues
            .iter()
            .zip(&self.aggregate_explained_variance)
            .enumerate()
        {
            eig.push_str(&format!("{}{},{l},{c}\n", self.mode.prefix(), j + 1));
        }
        let path = dir.join("eigenvalues.csv");
        fs::write(&path, eig).map_err(|source| CliError::Io { path, source })?;
        written.push("eigenvalues.csv".into());
        Ok(written)
    }
}
