//! The `verify` subcommand: checks numerically that the loadings `U·S`
//! equal the correlations between the data and its principal components.

use corrpca_core::{
    component_loadings, correlation_matrix, direct_component_correlations, eigen_decompose,
    principal_components, reduce_via_p, standardize_columns,
};
use serde::Serialize;

use crate::dataset::Dataset;
use crate::error::{CliError, Result};

/// Components with eigenvalues at or below this carry no variance and
/// have no defined correlation with the data.
pub const NULL_EIGENVALUE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n_observations: usize,
    pub n_variables: usize,
    pub components_checked: usize,
    pub max_abs_deviation: f64,
}

pub fn run_verify(dataset: &Dataset) -> Result<VerifyReport> {
    let names = &dataset.column_names;
    let core = |e| CliError::from_core(e, names);
    let z = standardize_columns(&dataset.data).map_err(core)?;
    let decomp = eigen_decompose(&correlation_matrix(&z).map_err(core)?).map_err(core)?;
    let k = decomp
        .eigenvalues()
        .iter()
        .filter(|&&l| l > NULL_EIGENVALUE)
        .count();

    let p = principal_components(&z, decomp.u()).map_err(core)?;
    let direct =
        direct_component_correlations(&z, &reduce_via_p(&p, k).map_err(core)?).map_err(core)?;
    let loadings = component_loadings(&decomp)
        .matrix()
        .leading_columns(k)
        .map_err(core)?;
    let max_abs_deviation = loadings.max_abs_diff(&direct).map_err(core)?;

    Ok(VerifyReport {
        n_observations: dataset.n_observations(),
        n_variables: dataset.n_variables(),
        components_checked: k,
        max_abs_deviation,
    })
}
