#![allow(dead_code)]

use coreep::gen::GenSpec;
use coreep::Matrix;
use proptest::prelude::*;

/// Feasible specs with `n <= max_n`, index `<= max_k` and conditioning
/// log-uniform in `[1, cmax]`.
pub fn specs(max_n: usize, max_k: usize, cmax: f64) -> impl Strategy<Value = GenSpec> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 0..=max_k.min(n)))
        .prop_flat_map(move |(n, k)| {
            let r = if k == 0 { n..=n } else { 0..=n - k };
            (Just(n), Just(k), r, any::<u64>(), 0.0..=cmax.log10())
        })
        .prop_map(|(n, k, r, seed, e)| GenSpec::new(n, r, k, seed).with_conditioning(10f64.powf(e)))
}

/// Specs of index at most one.
pub fn index_le_one_specs(max_n: usize) -> impl Strategy<Value = GenSpec> {
    specs(max_n, 1, 1e2)
}

pub fn rel_diff(a: &Matrix, b: &Matrix) -> f64 {
    let scale = a.norm_fro().max(b.norm_fro());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm_fro() / scale
    }
}

pub fn example_a() -> Matrix {
    Matrix::from_real_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
}

pub fn example_b() -> Matrix {
    Matrix::from_real_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
}
