//! Covariance, column standardization, Pearson correlation and the
//! determination (squared-correlation) matrix.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Real, Scalar};
use crate::stats::{compensated_sum, is_degenerate, mean_of, sum_of_squares, Sample};

/// Correlation entries may overshoot `[-1, 1]` by this much before being
/// clamped; anything larger is an error.
pub const CLAMP_TOLERANCE: f64 = 1e-12;
/// Accepted overshoot for inputs to [`determination_matrix`].
pub const DETERMINATION_TOLERANCE: f64 = 1e-9;

/// `n x m` matrix of `n` observations (rows) of `m` random variables (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix<T> {
    observations: Matrix<T>,
    standardized: bool,
}

impl<T: Scalar> DataMatrix<T> {
    /// Raw data. At least two observations are required.
    pub fn new(observations: Matrix<T>) -> Result<Self> {
        if observations.rows() < 2 {
            return Err(Error::TooFewObservations {
                n: observations.rows(),
            });
        }
        Ok(Self {
            observations,
            standardized: false,
        })
    }

    pub fn observations(&self) -> &Matrix<T> {
        &self.observations
    }

    pub fn into_observations(self) -> Matrix<T> {
        self.observations
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    pub fn n_observations(&self) -> usize {
        self.observations.rows()
    }

    pub fn n_variables(&self) -> usize {
        self.observations.cols()
    }

    pub fn column(&self, j: usize) -> Sample<T> {
        Sample::from_parts(self.observations.column(j))
    }

    /// Each column minus its mean.
    pub fn centered(&self) -> Matrix<T> {
        let columns: Vec<Vec<T>> = (0..self.n_variables())
            .map(|j| self.column(j).center().into_values())
            .collect();
        Matrix::from_columns(&columns).expect("centering preserves shape")
    }
}

impl<T: Real> DataMatrix<T> {
    /// Wraps data that is already standardized, checking that every column
    /// has mean 0 (within 1e-10) and loaded variance 1 (within 1e-8).
    pub fn from_standardized(observations: Matrix<T>) -> Result<Self> {
        let data = Self::new(observations)?;
        let n = T::from_count(data.n_observations());
        for j in 0..data.n_variables() {
            let col = data.observations.column(j);
            let mean = mean_of(&col);
            let var = sum_of_squares(&col) / n - mean * mean;
            if mean.abs() > T::tolerance(1e-10) || (var - T::one()).abs() > T::tolerance(1e-8) {
                return Err(Error::NotStandardized { column: j });
            }
        }
        Ok(Self {
            standardized: true,
            ..data
        })
    }
}

/// Symmetric `m x m` matrix with unit diagonal and entries in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix<T> {
    r: Matrix<T>,
}

impl<T: Real> CorrelationMatrix<T> {
    /// Validates a user-supplied correlation matrix: square, symmetric within
    /// 1e-12, unit diagonal within 1e-10, entries in `[-1, 1]` up to a 1e-12
    /// overshoot which is clamped away.
    pub fn new(r: Matrix<T>) -> Result<Self> {
        if !r.is_square() {
            return Err(Error::InvalidCorrelation {
                reason: format!("not square: {:?}", r.shape()),
            });
        }
        if !r.is_symmetric(T::tolerance(1e-12)) {
            return Err(Error::InvalidCorrelation {
                reason: "not symmetric".into(),
            });
        }
        if let Some(i) = r
            .diagonal()
            .iter()
            .position(|&d| (d - T::one()).abs() > T::tolerance(1e-10))
        {
            return Err(Error::InvalidCorrelation {
                reason: format!("diagonal entry {i} is {}", r.get(i, i)),
            });
        }
        Ok(Self {
            r: clamp_unit(&r, T::tolerance(CLAMP_TOLERANCE))?,
        })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.r
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.r
    }

    pub fn order(&self) -> usize {
        self.r.rows()
    }
}

/// Squared correlations: shared-variance fractions in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterminationMatrix<T> {
    d: Matrix<T>,
}

impl<T: Scalar> DeterminationMatrix<T> {
    pub(crate) fn from_parts(d: Matrix<T>) -> Self {
        Self { d }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.d
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.d
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.d.row_sums()
    }

    pub fn column_sums(&self) -> Vec<T> {
        self.d.column_sums()
    }

    /// Row sums over the first `k` columns.
    pub fn cumulative_rows(&self, k: usize) -> Vec<T> {
        let k = k.min(self.d.cols());
        (0..self.d.rows())
            .map(|i| self.d.row(i)[..k].iter().fold(T::zero(), |acc, &v| acc + v))
            .collect()
    }
}

fn clamp_unit<T: Real>(r: &Matrix<T>, tol: T) -> Result<Matrix<T>> {
    let one = T::one();
    for i in 0..r.rows() {
        for j in 0..r.cols() {
            let v = r.get(i, j);
            if v.abs() > one + tol {
                return Err(Error::OutOfRange {
                    row: i,
                    col: j,
                    value: v.to_f64_lossy(),
                });
            }
        }
    }
    r.map(|v| v.max(-one).min(one))
}

/// `C = (1/n) XᵀX` over the column-centered data. The loaded divisor is
/// always used.
pub fn covariance_matrix<T: Scalar>(x: &DataMatrix<T>) -> Matrix<T> {
    let centered = x.centered();
    let n = T::from_count(x.n_observations());
    let cross = gram(&centered);
    cross
        .map(|v| v / n)
        .expect("covariance of finite data is finite")
}

/// Symmetric `XᵀX`, each entry summed with compensation.
fn gram<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    let m = x.cols();
    let columns: Vec<Vec<T>> = (0..m).map(|j| x.column(j)).collect();
    let mut data = vec![T::zero(); m * m];
    for i in 0..m {
        for j in i..m {
            let v = compensated_sum(columns[i].iter().zip(&columns[j]).map(|(&a, &b)| a * b));
            data[i * m + j] = v;
            data[j * m + i] = v;
        }
    }
    Matrix::from_parts(m, m, data)
}

/// Centers every column and divides it by its loaded standard deviation.
/// Fails on the first constant column.
pub fn standardize_columns<T: Real>(x: &DataMatrix<T>) -> Result<DataMatrix<T>> {
    let n = T::from_count(x.n_observations());
    let mut columns = Vec::with_capacity(x.n_variables());
    for j in 0..x.n_variables() {
        let raw = x.observations.column(j);
        let centered = Sample::from_parts(raw.clone()).center().into_values();
        let variance = sum_of_squares(&centered) / n;
        if is_degenerate(&raw, variance) {
            return Err(Error::ZeroVarianceColumn { column: j });
        }
        let std = variance.sqrt();
        columns.push(centered.into_iter().map(|v| v / std).collect::<Vec<_>>());
    }
    Ok(DataMatrix {
        observations: Matrix::from_columns(&columns)?,
        standardized: true,
    })
}

/// Pearson correlation: the cosine of the angle between the two centered
/// samples.
pub fn pearson<T: Real>(x: &Sample<T>, y: &Sample<T>) -> Result<T> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let xc = x.center();
    let yc = y.center();
    let n = T::from_count(x.len());
    for (raw, c) in [(x, &xc), (y, &yc)] {
        if is_degenerate(raw.values(), sum_of_squares(c.values()) / n) {
            return Err(Error::ZeroVariance);
        }
    }
    let r = xc.dot(&yc)? / (sum_of_squares(xc.values()) * sum_of_squares(yc.values())).sqrt();
    let one = T::one();
    if r.abs() > one + T::tolerance(CLAMP_TOLERANCE) {
        return Err(Error::OutOfRange {
            row: 0,
            col: 1,
            value: r.to_f64_lossy(),
        });
    }
    Ok(r.max(-one).min(one))
}

/// `R = (1/n) XᵀX` over the standardized data. Raw input is standardized
/// first, so constant columns surface as [`Error::ZeroVarianceColumn`].
pub fn correlation_matrix<T: Real>(x: &DataMatrix<T>) -> Result<CorrelationMatrix<T>> {
    let standardized;
    let z = if x.is_standardized() {
        x
    } else {
        standardized = standardize_columns(x)?;
        &standardized
    };
    let n = T::from_count(z.n_observations());
    let r = gram(z.observations()).map(|v| v / n)?;
    Ok(CorrelationMatrix {
        r: clamp_unit(&r, T::tolerance(CLAMP_TOLERANCE))?,
    })
}

/// Hadamard square `r * r`. Entries of `r` may exceed `[-1, 1]` by at most
/// 1e-9.
pub fn determination_matrix<T: Real>(r: &Matrix<T>) -> Result<DeterminationMatrix<T>> {
    let clamped = clamp_unit(r, T::tolerance(DETERMINATION_TOLERANCE))?;
    Ok(DeterminationMatrix {
        d: clamped.hadamard_square(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(rows: &[&[f64]]) -> DataMatrix<f64> {
        DataMatrix::new(Matrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn covariance_examples() {
        let c = covariance_matrix(&data(&[&[-1.], &[0.], &[1.]]));
        assert!((c.get(0, 0) - 2.0 / 3.0).abs() < 1e-15);

        let c = covariance_matrix(&data(&[&[1., 1.], &[2., 2.], &[6., 6.]]));
        let v = c.get(0, 0);
        assert!(c.as_slice().iter().all(|&e| e == v));

        // (1,-1,0) . (1,1,-2) = 0
        let c = covariance_matrix(&data(&[&[1., 1.], &[-1., 1.], &[0., -2.]]));
        assert_eq!(c.get(0, 1), 0.0);
        assert_eq!(c.get(1, 0), 0.0);
        assert!((c.get(0, 0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((c.get(1, 1) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn standardize_columns_examples() {
        let z = standardize_columns(&data(&[&[2.], &[4.], &[6.]])).unwrap();
        let s = (8.0f64 / 3.0).sqrt();
        for (a, b) in z
            .observations()
            .column(0)
            .iter()
            .zip([-2.0 / s, 0.0, 2.0 / s])
        {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(z.is_standardized());
        let again = standardize_columns(&z).unwrap();
        assert!(again.observations().approx_eq(z.observations(), 1e-10));

        let err = standardize_columns(&data(&[&[1., 3.], &[2., 3.], &[4., 3.]]));
        assert_eq!(err, Err(Error::ZeroVarianceColumn { column: 1 }));
    }

    #[test]
    fn pearson_examples() {
        let x = Sample::<f64>::new(vec![0.3, -1.2, 2.5, 0.7, 1.1]).unwrap();
        assert!((pearson(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &x.linear_transform(3.0, -2.0)).unwrap() + 1.0).abs() < 1e-15);
        let a = Sample::new(vec![-1., 0., 1.]).unwrap();
        let b = Sample::new(vec![1., 0., -1.]).unwrap();
        assert_eq!(pearson(&a, &b).unwrap(), -1.0);
    }

    #[test]
    fn pearson_errors() {
        let a = Sample::new(vec![1., 2., 3.]).unwrap();
        let b = Sample::new(vec![1., 2.]).unwrap();
        assert_eq!(
            pearson(&a, &b),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        );
        let c = Sample::new(vec![2., 2., 2.]).unwrap();
        assert_eq!(pearson(&a, &c), Err(Error::ZeroVariance));
    }

    #[test]
    fn correlation_matrix_examples() {
        let x = data(&[&[1., 2., 0.], &[2., 4., 1.], &[4., 8., -1.], &[3., 6., 5.]]);
        let r = correlation_matrix(&x).unwrap();
        for d in r.matrix().diagonal() {
            assert!((d - 1.0).abs() < 1e-12);
        }
        assert!((r.matrix().get(0, 1) - 1.0).abs() < 1e-12);
        assert!(r.matrix().is_symmetric(0.0));

        let bad = data(&[&[1., 0.], &[2., 0.], &[3., 0.]]);
        assert!(matches!(
            correlation_matrix(&bad),
            Err(Error::ZeroVarianceColumn { column: 1 })
        ));
    }

    #[test]
    fn determination_examples() {
        let id = Matrix::<f64>::identity(3).unwrap();
        assert_eq!(determination_matrix(&id).unwrap().matrix(), &id);
        let r = Matrix::from_rows(&[[1.0, -0.5], [-0.5, 1.0]]).unwrap();
        assert_eq!(determination_matrix(&r).unwrap().matrix().get(0, 1), 0.25);
        let over = Matrix::from_rows(&[[1.0 + 1e-10]]).unwrap();
        assert_eq!(determination_matrix(&over).unwrap().matrix().get(0, 0), 1.0);
        let bad = Matrix::from_rows(&[[1.1]]).unwrap();
        assert!(matches!(
            determination_matrix(&bad),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn correlation_matrix_validation() {
        let ok = Matrix::from_rows(&[[1.0, 0.6], [0.6, 1.0]]).unwrap();
        assert!(CorrelationMatrix::new(ok).is_ok());
        let asym = Matrix::from_rows(&[[1.0, 0.6], [0.5, 1.0]]).unwrap();
        assert!(CorrelationMatrix::new(asym).is_err());
        let diag = Matrix::from_rows(&[[2.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(CorrelationMatrix::new(diag).is_err());
        let big = Matrix::from_rows(&[[1.0, 1.5], [1.5, 1.0]]).unwrap();
        assert!(matches!(
            CorrelationMatrix::new(big),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn from_standardized_checks_columns() {
        let z = standardize_columns(&data(&[&[1., 5.], &[2., 3.], &[4., 4.]])).unwrap();
        let wrapped = DataMatrix::from_standardized(z.observations().clone()).unwrap();
        assert!(wrapped.is_standardized());
        let raw = Matrix::from_rows(&[[1.0], [2.0], [3.0]]).unwrap();
        assert_eq!(
            DataMatrix::from_standardized(raw),
            Err(Error::NotStandardized { column: 0 })
        );
    }
}
