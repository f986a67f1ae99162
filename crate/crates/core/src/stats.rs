//! Statistics of a single random variable: mean, random component,
//! variance, standard deviation, standardization and affine maps.

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Variance divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivisorConvention {
    /// Divide by `n`. Used everywhere in the pipeline.
    #[default]
    LoadedN,
    /// Divide by `n - 1`.
    UnloadedNMinus1,
}

impl DivisorConvention {
    pub fn divisor(self, n: usize) -> usize {
        match self {
            DivisorConvention::LoadedN => n,
            DivisorConvention::UnloadedNMinus1 => n - 1,
        }
    }
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for v in values {
        let t = sum + v;
        if sum.magnitude() >= v.magnitude() {
            comp = comp + ((sum - t) + v);
        } else {
            comp = comp + ((v - t) + sum);
        }
        sum = t;
    }
    sum + comp
}

pub(crate) fn mean_of<T: Scalar>(values: &[T]) -> T {
    let n = T::from_count(values.len());
    let first = compensated_sum(values.iter().copied()) / n;
    // second pass removes the residual rounding of the first
    let residual = compensated_sum(values.iter().map(|&v| v - first)) / n;
    first + residual
}

pub(crate) fn sum_of_squares<T: Scalar>(values: &[T]) -> T {
    compensated_sum(values.iter().map(|&v| v * v))
}

/// A column is treated as constant when its loaded standard deviation is
/// within rounding noise of its magnitude.
pub(crate) fn is_degenerate<T: Real>(values: &[T], loaded_variance: T) -> bool {
    let scale = values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let noise = T::epsilon() * T::from_count(64) * scale;
    loaded_variance.sqrt() <= noise
}

/// `n >= 2` finite observations of one random variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample<T> {
    values: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats<T> {
    pub mean: T,
    pub variance: T,
    pub std: T,
    pub divisor_convention: DivisorConvention,
}

impl<T: Scalar> Sample<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewObservations { n: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        Ok(Self { values })
    }

    pub(crate) fn from_parts(values: Vec<T>) -> Self {
        debug_assert!(values.len() >= 2);
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn mean(&self) -> T {
        mean_of(&self.values)
    }

    /// The random component `x_i = X_i - mean(X)`.
    pub fn center(&self) -> Self {
        let mean = self.mean();
        Self::from_parts(self.values.iter().map(|&v| v - mean).collect())
    }

    pub fn variance(&self, convention: DivisorConvention) -> T {
        let centered = self.center();
        sum_of_squares(&centered.values) / T::from_count(convention.divisor(self.len()))
    }

    /// `a + b * X_i`.
    pub fn linear_transform(&self, a: T, b: T) -> Self {
        Self::from_parts(self.values.iter().map(|&v| a + b * v).collect())
    }

    pub fn dot(&self, other: &Self) -> Result<T> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(compensated_sum(
            self.values.iter().zip(&other.values).map(|(&a, &b)| a * b),
        ))
    }
}

impl<T: Real> Sample<T> {
    pub fn std(&self, convention: DivisorConvention) -> T {
        self.variance(convention).sqrt()
    }

    pub fn summary(&self, convention: DivisorConvention) -> SummaryStats<T> {
        let variance = self.variance(convention);
        SummaryStats {
            mean: self.mean(),
            variance,
            std: variance.sqrt(),
            divisor_convention: convention,
        }
    }

    /// Zero mean, unit loaded variance. Constant samples are rejected.
    pub fn standardize(&self) -> Result<Self> {
        let centered = self.center();
        let variance = sum_of_squares(&centered.values) / T::from_count(self.len());
        if is_degenerate(&self.values, variance) {
            return Err(Error::ZeroVariance);
        }
        let std = variance.sqrt();
        Ok(Self::from_parts(
            centered.values.iter().map(|&v| v / std).collect(),
        ))
    }

    /// Euclidean length of the vector of observations.
    pub fn norm(&self) -> T {
        sum_of_squares(&self.values).sqrt()
    }
}
