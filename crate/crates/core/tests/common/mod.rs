#![allow(dead_code)]

use corrpca_core::{CorrelationMatrix64, DataMatrix64, Matrix64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// `n x m` raw data with a random correlation structure: independent
/// normals mixed by a random `m x m` matrix, then shifted and scaled per
/// column.
pub fn random_data(n: usize, m: usize, seed: u64) -> DataMatrix64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mix: Vec<f64> = (0..m * m).map(|_| rng.random_range(-1.0..1.0)).collect();
    let shift: Vec<f64> = (0..m).map(|_| rng.random_range(-50.0..50.0)).collect();
    let scale: Vec<f64> = (0..m).map(|_| rng.random_range(0.1..10.0)).collect();
    let mut data = Vec::with_capacity(n * m);
    for _ in 0..n {
        let z: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        for j in 0..m {
            let mixed: f64 = (0..m).map(|p| z[p] * mix[p * m + j]).sum();
            data.push(shift[j] + scale[j] * mixed);
        }
    }
    DataMatrix64::new(Matrix64::from_vec(n, m, data).unwrap()).unwrap()
}

pub fn random_correlation(m: usize, seed: u64) -> CorrelationMatrix64 {
    corrpca_core::correlation_matrix(&random_data(4 * m + 10, m, seed)).unwrap()
}

/// Textbook two-pass Pearson coefficient, kept deliberately naive.
pub fn naive_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Pearson coefficient of every column of `x` against every column of `p`.
pub fn pairwise_pearson(x: &Matrix64, p: &Matrix64) -> Matrix64 {
    let mut out = Vec::with_capacity(x.cols() * p.cols());
    for i in 0..x.cols() {
        let xi = x.column(i);
        for j in 0..p.cols() {
            out.push(naive_pearson(&xi, &p.column(j)));
        }
    }
    Matrix64::from_vec(x.cols(), p.cols(), out).unwrap()
}

pub fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| acc.max(v.abs()))
}
