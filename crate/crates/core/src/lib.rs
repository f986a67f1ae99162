//! Principal component analysis and factor analysis on correlation
//! matrices, built around one identity: for standardized data `X` whose
//! correlation matrix decomposes as `R = UΛUᵀ`, the correlations between
//! the variables and the principal components `P = XU` form the matrix
//! `U·S` with `S = sqrt(Λ)`, which is also the factor-loadings matrix.
//!
//! Everything is generic over the scalar type. Operations that only need
//! field arithmetic ([`Matrix`] products, means, variances) accept any
//! [`Scalar`], including exact rationals; anything that takes square roots
//! needs a [`Real`] (`f32` or `f64`). Tolerances quoted in the docs are for
//! `f64`; for `f32` they are raised to a small multiple of machine epsilon.
//!
//! ```
//! use corrpca_core::*;
//!
//! let x = DataMatrix64::new(Matrix64::from_rows(&[
//!     [1.0, 2.0, 0.5],
//!     [2.0, 3.5, 0.1],
//!     [3.0, 6.5, 0.9],
//!     [4.0, 8.0, 0.2],
//!     [5.0, 9.5, 0.7],
//! ])?)?;
//! let z = standardize_columns(&x)?;
//! let decomp = eigen_decompose(&correlation_matrix(&z)?)?;
//! let p = principal_components(&z, decomp.u())?;
//! let closed_form = component_loadings(&decomp);
//! let direct = direct_component_correlations(&z, &p)?;
//! assert!(closed_form.matrix().approx_eq(&direct, 1e-9));
//! # Ok::<(), corrpca_core::Error>(())
//! ```

pub mod correlation;
pub mod eigen;
pub mod error;
pub mod factor;
pub mod matrix;
pub mod pca;
pub mod scalar;
pub mod stats;

pub use correlation::{
    correlation_matrix, covariance_matrix, determination_matrix, pearson, standardize_columns,
    CorrelationMatrix, DataMatrix, DeterminationMatrix,
};
pub use eigen::{eigen_decompose, jacobi_eigen, sqrt_eigenvalues, EigenDecomposition};
pub use error::{Error, Result};
pub use factor::{
    factor_common_variance, factor_loadings, implied_correlation, reduce_loadings,
    reduce_loadings_via_eigen, simulate, simulate_with, FactorModel, FactorSampler, NormalFactors,
};
pub use matrix::{diag_power, DiagonalMatrix, Matrix};
pub use pca::{
    aggregate_explained_variance, component_common_variance, component_loadings,
    direct_component_correlations, principal_components, reduce_via_p, reduce_via_u, select_k,
    LoadingsMatrix, PrincipalComponents,
};
pub use scalar::{Real, Scalar};
pub use stats::{DivisorConvention, Sample, SummaryStats};

pub use num_rational::Rational64;

pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type RationalMatrix = Matrix<Rational64>;
pub type DiagonalMatrix64 = DiagonalMatrix<f64>;
pub type Sample64 = Sample<f64>;
pub type Sample32 = Sample<f32>;
pub type RationalSample = Sample<Rational64>;
pub type DataMatrix64 = DataMatrix<f64>;
pub type DataMatrix32 = DataMatrix<f32>;
pub type CorrelationMatrix64 = CorrelationMatrix<f64>;
pub type DeterminationMatrix64 = DeterminationMatrix<f64>;
pub type EigenDecomposition64 = EigenDecomposition<f64>;
pub type PrincipalComponents64 = PrincipalComponents<f64>;
pub type LoadingsMatrix64 = LoadingsMatrix<f64>;
pub type FactorModel64 = FactorModel<f64>;
