//! Independent reference implementations shared by the integration tests
//! and the acceptance run.
#![allow(dead_code)]

use ndarray::{Array2, ArrayView2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdr::aesi::{reconstruction_loss, AutoencoderParams, Variant};

/// Normalized Walsh-Hadamard matrix built by the doubling recursion.
pub fn dense_hadamard(d: usize) -> Array2<f64> {
    let mut h = Array2::from_elem((1, 1), 1.0);
    while h.nrows() < d {
        let n = h.nrows();
        let mut next = Array2::zeros((2 * n, 2 * n));
        for r in 0..n {
            for c in 0..n {
                let v = h[[r, c]] / 2f64.sqrt();
                next[[r, c]] = v;
                next[[r, c + n]] = v;
                next[[r + n, c]] = v;
                next[[r + n, c + n]] = -v;
            }
        }
        h = next;
    }
    h
}

pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive(f, a, m, left, tol / 2.0, depth - 1) + adaptive(f, m, b, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    adaptive(f, a, b, simpson(f, a, b), tol, 50)
}

/// Conditional mean of N(0, 1) on `[a, b]`, infinite ends clipped at +-14.
pub fn gaussian_cell_mean(a: f64, b: f64) -> f64 {
    let (a, b) = (a.max(-14.0), b.min(14.0));
    let mass = integrate(&std_normal_pdf, a, b, 1e-15);
    let first = integrate(&|x| x * std_normal_pdf(x), a, b, 1e-15);
    first / mass
}

/// Largest `|centroid - conditional mean of its cell|` for a table.
pub fn lloyd_residual(centroids: &[f64], boundaries: &[f64]) -> f64 {
    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend_from_slice(boundaries);
    edges.push(f64::INFINITY);
    centroids
        .iter()
        .enumerate()
        .map(|(k, &c)| (c - gaussian_cell_mean(edges[k], edges[k + 1])).abs())
        .fold(0.0, f64::max)
}

pub fn excess_kurtosis(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let m2 = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m4 = x.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
    m4 / (m2 * m2) - 3.0
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Array2<f64> {
    Array2::from_shape_fn((rows, cols), |_| rng.random_range(-1.0..1.0))
}

/// Random parameters away from the initialization scale.
pub fn random_params(variant: Variant, h: usize, i: usize, c: usize, bias: bool, seed: u64) -> AutoencoderParams<f64> {
    let mut p = AutoencoderParams::init(variant, h, i, c, bias, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xF00D);
    p.for_each_mut(|x| *x += rng.random_range(-0.3..0.3));
    p
}

/// Central finite differences of the reconstruction loss, one per parameter
/// in `for_each_mut` order.
pub fn finite_difference_gradient(
    p: &AutoencoderParams<f64>,
    v: ArrayView2<f64>,
    u: ArrayView2<f64>,
    step: f64,
) -> Vec<f64> {
    (0..p.num_params())
        .map(|k| {
            let eval = |delta: f64| {
                let mut q = p.clone();
                let mut idx = 0;
                q.for_each_mut(|x| {
                    if idx == k {
                        *x += delta;
                    }
                    idx += 1;
                });
                reconstruction_loss(&q, v, u).unwrap()
            };
            (eval(step) - eval(-step)) / (2.0 * step)
        })
        .collect()
}

/// Worst relative disagreement, with `floor` guarding near-zero entries.
pub fn max_rel_error(a: &[f64], b: &[f64], floor: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(floor))
        .fold(0.0, f64::max)
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}
