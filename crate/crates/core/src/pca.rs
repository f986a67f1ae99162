//! Principal components `P = XU` and the correlations between the primary
//! variables and their components.
//!
//! For standardized `X` with `R = UΛUᵀ`, the matrix of correlations between
//! the columns of `X` and the columns of `P` is exactly `U·S` with
//! `S = sqrt(Λ)`. [`component_loadings`] evaluates that closed form;
//! [`direct_component_correlations`] computes the same matrix the long way,
//! from the data and the components, so the two can be compared on any
//! dataset.
//!
//! Loadings inherit the eigenvector orientation chosen in
//! [`crate::eigen`]: flipping the sign of a component flips the sign of its
//! column of loadings and nothing else.

use crate::correlation::{DataMatrix, DeterminationMatrix};
use crate::eigen::EigenDecomposition;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::stats::{DivisorConvention, Sample};

/// Default per-variable cumulative common-variance threshold for [`select_k`].
pub const DEFAULT_THRESHOLD: f64 = 0.8;
/// Component variances at or below this are treated as zero.
pub const ZERO_COMPONENT_VARIANCE: f64 = 1e-12;
/// Loadings may overshoot `[-1, 1]` by this much before clamping.
pub const LOADING_TOLERANCE: f64 = 1e-10;

/// `n x k` matrix of mutually orthogonal components with their variances.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalComponents<T> {
    p: Matrix<T>,
    component_variances: Vec<T>,
}

impl<T: Real> PrincipalComponents<T> {
    pub fn matrix(&self) -> &Matrix<T> {
        &self.p
    }

    /// Loaded variances of the columns; these are the retained eigenvalues.
    pub fn component_variances(&self) -> &[T] {
        &self.component_variances
    }

    pub fn n_components(&self) -> usize {
        self.p.cols()
    }

    /// `X ≈ P Uᵀ`; exact (up to rounding) when all components are kept.
    pub fn reconstruct(&self, u: &Matrix<T>) -> Result<Matrix<T>> {
        self.p.matmul(&u.transpose())
    }
}

/// `m x k` matrix: row `i` is a primary variable, column `j` a component or
/// factor. Entries are correlations, so they lie in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadingsMatrix<T> {
    l: Matrix<T>,
}

impl<T: Real> LoadingsMatrix<T> {
    /// Validates externally supplied loadings: entries in `[-1, 1]` within
    /// 1e-10, at most as many columns as rows, and unit row norms (within
    /// 1e-8) when the matrix is square.
    pub fn new(l: Matrix<T>) -> Result<Self> {
        if l.cols() > l.rows() {
            return Err(Error::InvalidLoadings {
                reason: format!("{} factors for {} variables", l.cols(), l.rows()),
            });
        }
        let tol = T::tolerance(LOADING_TOLERANCE);
        if let Some(pos) = l.as_slice().iter().position(|v| v.abs() > T::one() + tol) {
            return Err(Error::OutOfRange {
                row: pos / l.cols(),
                col: pos % l.cols(),
                value: l.as_slice()[pos].to_f64_lossy(),
            });
        }
        if l.is_square() {
            let norm_tol = T::tolerance(1e-8);
            for (i, sq) in l.hadamard_square().row_sums().into_iter().enumerate() {
                if (sq.sqrt() - T::one()).abs() > norm_tol {
                    return Err(Error::InvalidLoadings {
                        reason: format!("row {i} of a full model has norm {}", sq.sqrt()),
                    });
                }
            }
        }
        Ok(Self::clamped(l))
    }

    pub(crate) fn clamped(l: Matrix<T>) -> Self {
        let one = T::one();
        debug_assert!(l.max_abs() <= one + T::tolerance(LOADING_TOLERANCE));
        Self {
            l: l.map(|v| v.max(-one).min(one))
                .expect("clamped loadings are finite"),
        }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.l
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.l
    }

    pub fn n_variables(&self) -> usize {
        self.l.rows()
    }

    pub fn n_columns(&self) -> usize {
        self.l.cols()
    }
}

/// `P = X·U` for standardized `X` and `m x k` orthonormal `U`.
pub fn principal_components<T: Real>(
    x: &DataMatrix<T>,
    u: &Matrix<T>,
) -> Result<PrincipalComponents<T>> {
    if !x.is_standardized() {
        return Err(Error::NotStandardized { column: 0 });
    }
    if u.rows() != x.n_variables() || u.cols() > u.rows() {
        return Err(Error::ShapeMismatch {
            op: "principal_components",
            left: x.observations().shape(),
            right: u.shape(),
        });
    }
    let p = x.observations().matmul(u)?;
    let component_variances = (0..p.cols())
        .map(|j| Sample::from_parts(p.column(j)).variance(DivisorConvention::LoadedN))
        .collect();
    Ok(PrincipalComponents {
        p,
        component_variances,
    })
}

/// First reduction path: project onto the first `k` eigenvectors only.
pub fn reduce_via_u<T: Real>(
    x: &DataMatrix<T>,
    decomp: &EigenDecomposition<T>,
    k: usize,
) -> Result<PrincipalComponents<T>> {
    let u_reduced = decomp.u().leading_columns(k)?;
    principal_components(x, &u_reduced)
}

/// Second reduction path: keep the first `k` columns of an existing `P`.
pub fn reduce_via_p<T: Real>(
    p: &PrincipalComponents<T>,
    k: usize,
) -> Result<PrincipalComponents<T>> {
    Ok(PrincipalComponents {
        p: p.p.leading_columns(k)?,
        component_variances: p.component_variances[..k].to_vec(),
    })
}

/// Closed form `R_{X,P} = U·S`.
pub fn component_loadings<T: Real>(decomp: &EigenDecomposition<T>) -> LoadingsMatrix<T> {
    LoadingsMatrix::clamped(
        decomp
            .u()
            .mul_diagonal(decomp.s())
            .expect("U and S share their order"),
    )
}

/// Correlations between the columns of standardized `X` and the columns of
/// `P`, computed from the data: `r_ij = (1/n) x_iᵀ p_j / sqrt(λ_j)`.
pub fn direct_component_correlations<T: Real>(
    x: &DataMatrix<T>,
    p: &PrincipalComponents<T>,
) -> Result<Matrix<T>> {
    if !x.is_standardized() {
        return Err(Error::NotStandardized { column: 0 });
    }
    if x.n_observations() != p.p.rows() {
        return Err(Error::ShapeMismatch {
            op: "direct_component_correlations",
            left: x.observations().shape(),
            right: p.p.shape(),
        });
    }
    let zero = T::tolerance(ZERO_COMPONENT_VARIANCE);
    if let Some(j) = p.component_variances.iter().position(|&v| v <= zero) {
        return Err(Error::ZeroVarianceComponent { component: j });
    }
    let n = T::from_count(x.n_observations());
    let cross = x.observations().transpose_matmul(&p.p)?;
    let k = p.p.cols();
    let data = cross
        .as_slice()
        .iter()
        .enumerate()
        .map(|(idx, &v)| v / n / p.component_variances[idx % k].sqrt())
        .collect();
    Matrix::from_vec(cross.rows(), k, data)
}

/// `D_{X,P} = L * L`: the share of each variable's variance carried by each
/// component.
pub fn component_common_variance<T: Real>(l: &LoadingsMatrix<T>) -> DeterminationMatrix<T> {
    DeterminationMatrix::from_parts(l.matrix().hadamard_square())
}

/// Smallest `k` such that every variable keeps at least `threshold` of its
/// variance in the first `k` columns of `d`. Returns the column count when
/// no smaller `k` qualifies.
pub fn select_k<T: Real>(d: &DeterminationMatrix<T>, threshold: T) -> usize {
    let m = d.matrix().cols();
    let rows = d.matrix().rows();
    let mut cumulative = vec![T::zero(); rows];
    for k in 1..=m {
        for (i, c) in cumulative.iter_mut().enumerate() {
            *c = *c + d.matrix().get(i, k - 1);
        }
        if cumulative.iter().all(|&c| c >= threshold) {
            return k;
        }
    }
    m
}

/// Cumulative `Σ_{j<=k} λ_j / m` for every `k`.
pub fn aggregate_explained_variance<T: Real>(eigenvalues: &[T]) -> Vec<T> {
    let m = T::from_count(eigenvalues.len());
    eigenvalues
        .iter()
        .scan(T::zero(), |acc, &l| {
            *acc = *acc + l;
            Some(*acc / m)
        })
        .collect()
}
