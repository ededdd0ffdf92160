#![allow(dead_code)]

use risce::rng::{draw_rayleigh, RngSeed};
use risce::tensor::ComplexMatrix;

pub fn rand_mat(rows: usize, cols: usize, seed: u64, stream: u64) -> ComplexMatrix {
    draw_rayleigh(rows, cols, &mut RngSeed::new(seed, stream).rng())
}

/// `‖a − b‖ / ‖a‖`, or the absolute difference when `a` is zero.
pub fn rel_err(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    let d = (a - b).frobenius_norm();
    let n = a.frobenius_norm();
    if n == 0.0 {
        d
    } else {
        d / n
    }
}
