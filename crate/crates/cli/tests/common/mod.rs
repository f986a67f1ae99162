#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use corrpca_core::{DataMatrix64, Matrix64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_corrpca"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn path_arg(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

/// `n x m` raw data: independent normals mixed by a random matrix, then
/// shifted and scaled per column.
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

pub fn to_csv(x: &Matrix64) -> String {
    let mut s = String::new();
    let header: Vec<String> = (1..=x.cols()).map(|j| format!("v{j}")).collect();
    s.push_str(&header.join(","));
    s.push('\n');
    for i in 0..x.rows() {
        let row: Vec<String> = x.row(i).iter().map(f64::to_string).collect();
        let _ = writeln!(s, "{}", row.join(","));
    }
    s
}
