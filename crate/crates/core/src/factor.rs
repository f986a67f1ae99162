//! Linear factor model `x = L′ f` with `k` independent standardized factors.
//!
//! Data orientation: simulated and observed data keep observations in rows,
//! so a simulated batch is `F · L′ᵀ` where `F` is `samples x k`.
//!
//! Random factors come from [`NormalFactors`]: a ChaCha8 stream seeded with
//! `seed_from_u64`, turned into standard normals by `rand_distr`'s ziggurat
//! sampler. Both are pure software and produce identical streams on every
//! platform. When `k < m` the simulated variables have variance equal to
//! their communality, not 1; no specific-variance term is added.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::correlation::{DataMatrix, DeterminationMatrix};
use crate::eigen::EigenDecomposition;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pca::{component_loadings, LoadingsMatrix};
use crate::scalar::Real;

/// Communality may exceed 1 by this much.
pub const COMMUNALITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct FactorModel<T> {
    loadings: LoadingsMatrix<T>,
    k: usize,
    source_dimension: usize,
}

impl<T: Real> FactorModel<T> {
    /// Wraps loadings whose modeled communalities lie in `[0, 1]`.
    pub fn new(loadings: LoadingsMatrix<T>) -> Result<Self> {
        let tol = T::tolerance(COMMUNALITY_TOLERANCE);
        let communalities = loadings.matrix().hadamard_square().row_sums();
        if let Some((i, c)) = communalities
            .iter()
            .enumerate()
            .find(|(_, &c)| c > T::one() + tol)
        {
            return Err(Error::InvalidLoadings {
                reason: format!("variable {i} has communality {c}"),
            });
        }
        Ok(Self {
            k: loadings.n_columns(),
            source_dimension: loadings.n_variables(),
            loadings,
        })
    }

    pub fn loadings(&self) -> &LoadingsMatrix<T> {
        &self.loadings
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source_dimension(&self) -> usize {
        self.source_dimension
    }

    /// Per-variable modeled variance, the row sums of `L′ * L′`.
    pub fn communalities(&self) -> Vec<T> {
        self.loadings.matrix().hadamard_square().row_sums()
    }
}

/// `L = U·S`; the same matrix as [`component_loadings`].
pub fn factor_loadings<T: Real>(decomp: &EigenDecomposition<T>) -> LoadingsMatrix<T> {
    component_loadings(decomp)
}

/// Keeps the first `k` columns of `L`.
pub fn reduce_loadings<T: Real>(l: &LoadingsMatrix<T>, k: usize) -> Result<FactorModel<T>> {
    let reduced = l.matrix().leading_columns(k)?;
    FactorModel::new(LoadingsMatrix::clamped(reduced))
}

/// `L′ = U′·S′` from the truncated eigenvectors and standard deviations.
pub fn reduce_loadings_via_eigen<T: Real>(
    decomp: &EigenDecomposition<T>,
    k: usize,
) -> Result<FactorModel<T>> {
    let u = decomp.u().leading_columns(k)?;
    let s = decomp.s().leading(k)?;
    FactorModel::new(LoadingsMatrix::clamped(u.mul_diagonal(&s)?))
}

/// `L′ L′ᵀ`, the correlation matrix the model reproduces.
pub fn implied_correlation<T: Real>(model: &FactorModel<T>) -> Matrix<T> {
    let l = model.loadings.matrix();
    l.matmul(&l.transpose())
        .expect("conforming by construction")
}

/// `D_{X,F} = L′ * L′`.
pub fn factor_common_variance<T: Real>(model: &FactorModel<T>) -> DeterminationMatrix<T> {
    DeterminationMatrix::from_parts(model.loadings.matrix().hadamard_square())
}

/// Source of independent zero-mean, unit-variance factor values.
pub trait FactorSampler<T> {
    fn next_factor(&mut self) -> T;
}

/// Seeded standard-normal factors.
#[derive(Debug, Clone)]
pub struct NormalFactors {
    rng: ChaCha8Rng,
}

impl NormalFactors {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl<T: Real> FactorSampler<T> for NormalFactors {
    fn next_factor(&mut self) -> T {
        let z: f64 = StandardNormal.sample(&mut self.rng);
        T::lit(z)
    }
}

/// `samples` observations of the modeled variables, driven by seeded
/// standard-normal factors.
pub fn simulate<T: Real>(
    model: &FactorModel<T>,
    samples: usize,
    seed: u64,
) -> Result<DataMatrix<T>> {
    simulate_with(model, samples, &mut NormalFactors::new(seed))
}

/// Like [`simulate`] with a caller-supplied factor source. Factors are drawn
/// row by row: all `k` factors of observation 0, then observation 1, and so on.
pub fn simulate_with<T: Real, S: FactorSampler<T>>(
    model: &FactorModel<T>,
    samples: usize,
    sampler: &mut S,
) -> Result<DataMatrix<T>> {
    if samples < 2 {
        return Err(Error::TooFewSamples { samples });
    }
    let l = model.loadings.matrix();
    let (m, k) = l.shape();
    let mut data = Vec::with_capacity(samples * m);
    let mut f = vec![T::zero(); k];
    for _ in 0..samples {
        f.iter_mut().for_each(|v| *v = sampler.next_factor());
        for i in 0..m {
            let row = l.row(i);
            data.push(
                row.iter()
                    .zip(&f)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b),
            );
        }
    }
    DataMatrix::new(Matrix::from_vec(samples, m, data)?)
}
