//! Dense row-major matrices and diagonal matrices.

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Dense `rows x cols` matrix stored row-major. Every entry is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::DataLength {
                    rows: n,
                    cols: m,
                    len: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(n, m, data)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns<C: AsRef<[T]>>(columns: &[C]) -> Result<Self> {
        let m = columns.len();
        let n = columns.first().map_or(0, |c| c.as_ref().len());
        if let Some(bad) = columns.iter().find(|c| c.as_ref().len() != n) {
            return Err(Error::DataLength {
                rows: n,
                cols: m,
                len: bad.as_ref().len(),
            });
        }
        let mut data = Vec::with_capacity(n * m);
        for i in 0..n {
            for c in columns {
                data.push(c.as_ref()[i]);
            }
        }
        Self::from_vec(n, m, data)
    }

    /// Callers guarantee the shape is non-empty, the length matches and
    /// every entry is finite.
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert!(rows > 0 && cols > 0 && data.len() == rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::from_vec(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Result<Self> {
        Self::from_vec(rows, cols, vec![value; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    /// The first `k` columns.
    pub fn leading_columns(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.cols {
            return Err(Error::ComponentCount { k, max: self.cols });
        }
        let data = self
            .data
            .chunks(self.cols)
            .flat_map(|r| r[..k].iter().copied())
            .collect();
        Ok(Self::from_parts(self.rows, k, data))
    }

    /// Elementwise (Hadamard, or Schur) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "hadamard")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a * b)
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    pub fn hadamard_square(&self) -> Self {
        let data = self.data.iter().map(|&a| a * a).collect();
        Self::from_parts(self.rows, self.cols, data)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, inner, m) = (self.rows, self.cols, other.cols);
        let mut data = vec![T::zero(); n * m];
        for i in 0..n {
            let out = &mut data[i * m..(i + 1) * m];
            for p in 0..inner {
                let a = self.data[i * inner + p];
                let brow = &other.data[p * m..(p + 1) * m];
                for (o, &b) in out.iter_mut().zip(brow) {
                    *o = *o + a * b;
                }
            }
        }
        Self::from_vec(n, m, data)
    }

    /// `selfᵀ · other` without materializing the transpose.
    pub fn transpose_matmul(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                op: "transpose_matmul",
                left: (self.cols, self.rows),
                right: other.shape(),
            });
        }
        let (a_cols, m) = (self.cols, other.cols);
        let mut data = vec![T::zero(); a_cols * m];
        for r in 0..self.rows {
            let arow = self.row(r);
            let brow = other.row(r);
            for (i, &a) in arow.iter().enumerate() {
                let out = &mut data[i * m..(i + 1) * m];
                for (o, &b) in out.iter_mut().zip(brow) {
                    *o = *o + a * b;
                }
            }
        }
        Self::from_vec(a_cols, m, data)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self::from_parts(self.cols, self.rows, data)
    }

    pub fn scale(&self, factor: T) -> Result<Self> {
        Self::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|&a| a * factor).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a - b)
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    /// `self · diag`: scales column `j` by `diag[j]`.
    pub fn mul_diagonal(&self, diag: &DiagonalMatrix<T>) -> Result<Self> {
        if diag.order() != self.cols {
            return Err(Error::ShapeMismatch {
                op: "mul_diagonal",
                left: self.shape(),
                right: (diag.order(), diag.order()),
            });
        }
        let data = self
            .data
            .chunks(self.cols)
            .flat_map(|r| r.iter().zip(diag.entries()).map(|(&a, &d)| a * d))
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.data
            .chunks(self.cols)
            .map(|r| r.iter().fold(T::zero(), |acc, &v| acc + v))
            .collect()
    }

    pub fn column_sums(&self) -> Vec<T> {
        let mut sums = vec![T::zero(); self.cols];
        for r in self.data.chunks(self.cols) {
            for (s, &v) in sums.iter_mut().zip(r) {
                *s = *s + v;
            }
        }
        sums
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Largest `|self[i][j] - other[i][j]|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).magnitude())
            .fold(T::zero(), |acc, d| if d > acc { d } else { acc }))
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|v| v.magnitude())
            .fold(T::zero(), |acc, d| if d > acc { d } else { acc })
    }

    /// Elementwise comparison with an absolute tolerance. Shapes must match.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i + 1..self.cols).all(|j| (self.get(i, j) - self.get(j, i)).magnitude() <= tol)
            })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Result<Matrix<U>> {
        Matrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| f(v)).collect(),
        )
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }
}

impl<T: Real> Matrix<T> {
    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc + v * v)
            .sqrt()
    }
}

/// Square diagonal matrix holding only its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMatrix<T> {
    diagonal: Vec<T>,
}

impl<T: Scalar> DiagonalMatrix<T> {
    pub fn new(diagonal: Vec<T>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
        }
        if let Some(i) = diagonal.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::NonFinite { row: i, col: i });
        }
        Ok(Self { diagonal })
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::new(vec![T::one(); order])
    }

    pub fn order(&self) -> usize {
        self.diagonal.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.diagonal
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let n = self.order();
        let mut data = vec![T::zero(); n * n];
        for (i, &d) in self.diagonal.iter().enumerate() {
            data[i * n + i] = d;
        }
        Matrix::from_parts(n, n, data)
    }

    /// `self · m`: scales row `i` of `m` by `diag[i]`.
    pub fn matmul(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        if self.order() != m.rows() {
            return Err(Error::ShapeMismatch {
                op: "diagonal matmul",
                left: (self.order(), self.order()),
                right: m.shape(),
            });
        }
        let data = m
            .as_slice()
            .chunks(m.cols())
            .zip(&self.diagonal)
            .flat_map(|(r, &d)| r.iter().map(move |&a| d * a))
            .collect();
        Matrix::from_vec(m.rows(), m.cols(), data)
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.order() {
            return Err(Error::ComponentCount {
                k,
                max: self.order(),
            });
        }
        Ok(Self {
            diagonal: self.diagonal[..k].to_vec(),
        })
    }
}

impl<T: Real> DiagonalMatrix<T> {
    /// Raises every diagonal entry to `exponent`. Negative or fractional
    /// exponents require a strictly positive diagonal.
    pub fn power(&self, exponent: T) -> Result<Self> {
        let integral = exponent.fract() == T::zero();
        let needs_positive = exponent < T::zero() || !integral;
        if needs_positive {
            if let Some((i, &v)) = self
                .diagonal
                .iter()
                .enumerate()
                .find(|(_, &v)| v <= T::zero())
            {
                return Err(Error::NonPositiveDiagonal {
                    index: i,
                    value: v.to_f64_lossy(),
                });
            }
        }
        Self::new(self.diagonal.iter().map(|&v| v.powf(exponent)).collect())
    }
}

/// Free-function form of [`DiagonalMatrix::power`].
pub fn diag_power<T: Real>(v: &DiagonalMatrix<T>, exponent: T) -> Result<DiagonalMatrix<T>> {
    v.power(exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn m(rows: &[&[f64]]) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hadamard_examples() {
        let a = m(&[&[1., 2.], &[3., 4.]]);
        assert_eq!(
            a.hadamard(&Matrix::identity(2).unwrap()).unwrap(),
            m(&[&[1., 0.], &[0., 4.]])
        );
        let row = m(&[&[2., 3.]]);
        assert_eq!(row.hadamard(&row).unwrap(), m(&[&[4., 9.]]));
        assert_eq!(row.hadamard_square(), m(&[&[4., 9.]]));
        let b = m(&[&[5., 6.], &[7., 8.]]);
        assert_eq!(a.hadamard(&b).unwrap(), m(&[&[5., 12.], &[21., 32.]]));
    }

    #[test]
    fn hadamard_shape_mismatch() {
        let a = m(&[&[1., 2.]]);
        let b = m(&[&[1.], &[2.]]);
        assert!(matches!(a.hadamard(&b), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn matmul_examples() {
        let a = m(&[&[1., 2.], &[3., 4.]]);
        assert_eq!(Matrix::identity(2).unwrap().matmul(&a).unwrap(), a);
        assert_eq!(
            m(&[&[1., 2.]]).matmul(&m(&[&[3.], &[4.]])).unwrap(),
            m(&[&[11.]])
        );
        let l = m(&[&[1., 1.], &[0., 1.]]);
        let r = m(&[&[1., 0.], &[1., 1.]]);
        assert_eq!(l.matmul(&r).unwrap(), m(&[&[2., 1.], &[1., 1.]]));
        assert!(matches!(
            l.matmul(&m(&[&[1., 2.]])),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn transpose_matmul_matches_explicit_transpose() {
        let a = m(&[&[1., 2., 3.], &[4., 5., 6.]]);
        let b = m(&[&[1., -1.], &[0.5, 2.]]);
        assert_eq!(
            a.transpose_matmul(&b).unwrap(),
            a.transpose().matmul(&b).unwrap()
        );
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(
            m(&[&[1., 2.], &[3., 4.]]).transpose(),
            m(&[&[1., 3.], &[2., 4.]])
        );
        let col = m(&[&[1., 2., 3.]]).transpose();
        assert_eq!(col.shape(), (3, 1));
        assert_eq!(col.column(0), vec![1., 2., 3.]);
    }

    #[test]
    fn exact_rational_products() {
        let half = Rational64::new(1, 2);
        let third = Rational64::new(1, 3);
        let a = Matrix::from_rows(&[[half, third]]).unwrap();
        let p = a.matmul(&a.transpose()).unwrap();
        assert_eq!(p.get(0, 0), Rational64::new(13, 36));
        assert_eq!(a.hadamard(&a).unwrap().get(0, 1), Rational64::new(1, 9));
    }

    #[test]
    fn constructors_reject_non_finite() {
        assert!(matches!(
            Matrix::from_vec(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(Matrix::from_rows(&[[f64::INFINITY]]).is_err());
        assert!(DiagonalMatrix::new(vec![f64::NAN]).is_err());
        assert!(matches!(
            Matrix::<f64>::from_vec(0, 2, vec![]),
            Err(Error::EmptyMatrix { .. })
        ));
        assert!(matches!(
            Matrix::from_vec(2, 2, vec![1.0; 3]),
            Err(Error::DataLength { .. })
        ));
    }

    #[test]
    fn diag_power_examples() {
        let d = DiagonalMatrix::new(vec![4.0, 9.0]).unwrap();
        assert_eq!(diag_power(&d, 0.5).unwrap().entries(), &[2.0, 3.0]);
        let d = DiagonalMatrix::new(vec![4.0]).unwrap();
        assert_eq!(diag_power(&d, -0.5).unwrap().entries(), &[0.5]);
        let id = DiagonalMatrix::<f64>::identity(3).unwrap();
        for e in [-2.0, -0.5, 0.0, 0.3, 7.0] {
            assert_eq!(diag_power(&id, e).unwrap(), id);
        }
    }

    #[test]
    fn diag_power_positivity() {
        let d = DiagonalMatrix::new(vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            d.power(-1.0),
            Err(Error::NonPositiveDiagonal { index: 1, .. })
        ));
        assert!(matches!(
            d.power(0.5),
            Err(Error::NonPositiveDiagonal { index: 1, .. })
        ));
        assert_eq!(d.power(2.0).unwrap().entries(), &[1.0, 0.0]);
        let neg = DiagonalMatrix::new(vec![-2.0]).unwrap();
        assert_eq!(neg.power(2.0).unwrap().entries(), &[4.0]);
    }

    #[test]
    fn diagonal_products() {
        let d = DiagonalMatrix::new(vec![2.0, 3.0]).unwrap();
        let a = m(&[&[1., 1.], &[1., 1.]]);
        assert_eq!(a.mul_diagonal(&d).unwrap(), m(&[&[2., 3.], &[2., 3.]]));
        assert_eq!(d.matmul(&a).unwrap(), m(&[&[2., 2.], &[3., 3.]]));
        assert_eq!(d.to_dense(), m(&[&[2., 0.], &[0., 3.]]));
    }

    #[test]
    fn leading_columns_bounds() {
        let a = m(&[&[1., 2., 3.], &[4., 5., 6.]]);
        assert_eq!(a.leading_columns(2).unwrap(), m(&[&[1., 2.], &[4., 5.]]));
        assert!(a.leading_columns(0).is_err());
        assert!(a.leading_columns(4).is_err());
    }
}
