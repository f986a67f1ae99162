//! Symmetric eigenproblem for correlation matrices.
//!
//! Eigenpairs come from cyclic Jacobi rotations. They are then sorted by
//! non-increasing eigenvalue (a stable sort, so equal eigenvalues keep the
//! order in which Jacobi produced them) and every eigenvector is oriented
//! so that its entry of largest magnitude is positive, the lowest row index
//! winning ties.

use crate::correlation::CorrelationMatrix;
use crate::error::{Error, Result};
use crate::matrix::{DiagonalMatrix, Matrix};
use crate::scalar::Real;

/// Maximum number of full Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;
/// Convergence when the off-diagonal Frobenius norm is below this fraction
/// of the input's Frobenius norm.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
/// Eigenvalues in `[-NEGATIVE_CLAMP, 0)` are set to zero; more negative is an error.
pub const NEGATIVE_CLAMP: f64 = 1e-10;
/// Neighbouring eigenvalues closer than this are reported as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<T> {
    eigenvalues: Vec<T>,
    u: Matrix<T>,
    s: DiagonalMatrix<T>,
}

impl<T: Real> EigenDecomposition<T> {
    /// Non-increasing variances of the principal components.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Unit eigenvectors in columns, ordered like [`Self::eigenvalues`].
    pub fn u(&self) -> &Matrix<T> {
        &self.u
    }

    /// `S = sqrt(Λ)`.
    pub fn s(&self) -> &DiagonalMatrix<T> {
        &self.s
    }

    pub fn lambda(&self) -> DiagonalMatrix<T> {
        DiagonalMatrix::new(self.eigenvalues.clone()).expect("eigenvalues are finite")
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U Λ Uᵀ`.
    pub fn reconstruct(&self) -> Matrix<T> {
        self.u
            .mul_diagonal(&self.lambda())
            .and_then(|ul| ul.matmul(&self.u.transpose()))
            .expect("square factors")
    }

    /// Indices `i` with `|λ_i - λ_{i+1}| < 1e-8`. Eigenvectors inside such a
    /// pair span a subspace; the particular basis is arbitrary.
    pub fn degenerate_pairs(&self) -> Vec<usize> {
        let gap = T::tolerance(DEGENERACY_GAP);
        self.eigenvalues
            .windows(2)
            .enumerate()
            .filter(|(_, w)| (w[0] - w[1]).abs() < gap)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Raw Jacobi diagonalization of a symmetric matrix. Returns unsorted
/// eigenvalues and the matching eigenvectors in columns.
pub fn jacobi_eigen<T: Real>(a: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch {
            op: "jacobi_eigen",
            left: a.shape(),
            right: a.shape(),
        });
    }
    let n = a.rows();
    let mut w: Vec<T> = a.as_slice().to_vec();
    let mut v: Vec<T> = Matrix::<T>::identity(n)?.into_vec();
    let threshold = T::tolerance(OFF_DIAGONAL_TOLERANCE) * a.frobenius_norm();
    let hundred = T::from_count(100);
    let half = T::lit(0.5);

    let off_norm = |w: &[T]| -> T {
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc = acc + w[i * n + j] * w[i * n + j];
                }
            }
        }
        acc.sqrt()
    };

    for sweep in 0..MAX_SWEEPS {
        let off = off_norm(&w);
        if off == T::zero() || off < threshold {
            return Ok((
                (0..n).map(|i| w[i * n + i]).collect(),
                Matrix::from_parts(n, n, v),
            ));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let g = hundred * apq.abs();
                // after a few sweeps, entries negligible against both diagonals are dropped
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    w[p * n + q] = T::zero();
                    w[q * n + p] = T::zero();
                    continue;
                }
                let h = aqq - app;
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = half * h / apq;
                    let t = T::one() / (theta.abs() + (T::one() + theta * theta).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = w[k * n + p];
                    let akq = w[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    w[k * n + p] = new_kp;
                    w[p * n + k] = new_kp;
                    w[k * n + q] = new_kq;
                    w[q * n + k] = new_kq;
                }
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = T::zero();
                w[q * n + p] = T::zero();
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let off = off_norm(&w);
    if off == T::zero() || off < threshold {
        return Ok((
            (0..n).map(|i| w[i * n + i]).collect(),
            Matrix::from_parts(n, n, v),
        ));
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Sorted, sign-normalized eigendecomposition of a correlation matrix.
pub fn eigen_decompose<T: Real>(r: &CorrelationMatrix<T>) -> Result<EigenDecomposition<T>> {
    let (raw_values, raw_vectors) = jacobi_eigen(r.matrix())?;
    let m = raw_values.len();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        raw_values[b]
            .partial_cmp(&raw_values[a])
            .expect("finite eigenvalues")
    });

    let clamp = T::tolerance(NEGATIVE_CLAMP);
    let mut eigenvalues = Vec::with_capacity(m);
    for (rank, &idx) in order.iter().enumerate() {
        let lambda = raw_values[idx];
        if lambda < -clamp {
            return Err(Error::NegativeEigenvalue {
                index: rank,
                value: lambda.to_f64_lossy(),
            });
        }
        eigenvalues.push(lambda.max(T::zero()));
    }

    let mut columns: Vec<Vec<T>> = order.iter().map(|&idx| raw_vectors.column(idx)).collect();
    for col in &mut columns {
        orient(col);
    }
    let u = Matrix::from_columns(&columns)?;
    let s = DiagonalMatrix::new(eigenvalues.iter().map(|l| l.sqrt()).collect())?;
    Ok(EigenDecomposition { eigenvalues, u, s })
}

/// Flips `v` so its largest-magnitude entry is positive. Entries within
/// rounding noise of the maximum count as tied and the first of them decides.
fn orient<T: Real>(v: &mut [T]) {
    let max = v.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
    let tie = max * T::epsilon() * T::from_count(64);
    if let Some(lead) = v.iter().find(|x| x.abs() >= max - tie) {
        if *lead < T::zero() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// `S = sqrt(Λ)` as a diagonal matrix.
pub fn sqrt_eigenvalues<T: Real>(decomp: &EigenDecomposition<T>) -> DiagonalMatrix<T> {
    decomp.s.clone()
}
