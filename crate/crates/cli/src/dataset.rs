//! CSV ingestion.

use std::collections::HashSet;
use std::path::Path;

use corrpca_core::{DataMatrix64, Matrix64};

use crate::error::{CliError, Result};

/// Named columns of numeric observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub column_names: Vec<String>,
    pub data: DataMatrix64,
    pub source_path: String,
}

impl Dataset {
    pub fn n_observations(&self) -> usize {
        self.data.n_observations()
    }

    pub fn n_variables(&self) -> usize {
        self.data.n_variables()
    }
}

/// Reads a comma-separated file. Without a header, columns are named
/// `c1`, `c2`, ... Every data cell must parse as a finite decimal number.
pub fn ingest_csv(path: impl AsRef<Path>, has_header: bool) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text, has_header, &path.display().to_string())
}

pub fn parse_csv(text: &str, has_header: bool, source_name: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let parse_err = |e: csv::Error| CliError::Parse {
        source_name: source_name.to_string(),
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };

    let mut column_names: Option<Vec<String>> = if has_header {
        let headers = reader.headers().map_err(parse_err)?;
        Some(headers.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut values: Vec<f64> = Vec::new();
    let mut rows = 0usize;
    for record in reader.records() {
        let record = record.map_err(parse_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let names = column_names
            .get_or_insert_with(|| (1..=record.len()).map(|i| format!("c{i}")).collect());
        for (cell, name) in record.iter().zip(names.iter()) {
            if cell.is_empty() {
                return Err(CliError::EmptyCell {
                    source_name: source_name.to_string(),
                    line,
                    column: name.clone(),
                });
            }
            let v: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| CliError::NonNumeric {
                    source_name: source_name.to_string(),
                    line,
                    column: name.clone(),
                    value: cell.to_string(),
                })?;
            values.push(v);
        }
        rows += 1;
    }

    let column_names = column_names.unwrap_or_default();
    validate_names(&column_names, source_name)?;
    if column_names.len() < 2 {
        return Err(CliError::InvalidData(format!(
            "{source_name}: need at least 2 columns, found {}",
            column_names.len()
        )));
    }
    if rows < 2 {
        return Err(CliError::InvalidData(format!(
            "{source_name}: need at least 2 data rows, found {rows}"
        )));
    }
    let matrix = Matrix64::from_vec(rows, column_names.len(), values)
        .map_err(|e| CliError::InvalidData(format!("{source_name}: {e}")))?;
    Ok(Dataset {
        column_names,
        data: DataMatrix64::new(matrix).map_err(|e| CliError::InvalidData(e.to_string()))?,
        source_path: source_name.to_string(),
    })
}

fn validate_names(names: &[String], source_name: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(CliError::InvalidData(format!(
                "{source_name}: column {} has an empty name",
                i + 1
            )));
        }
        if !seen.insert(name.as_str()) {
            return Err(CliError::InvalidData(format!(
                "{source_name}: duplicate column name '{name}'"
            )));
        }
    }
    Ok(())
}
