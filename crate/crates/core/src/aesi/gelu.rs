//! Exact GELU, `x * Phi(x)`, with `Phi(x) = erfc(-x / sqrt(2)) / 2` from
//! `libm` (the musl/FreeBSD `erfc`, accurate to about one ulp in f64).

use std::f64::consts::{FRAC_1_SQRT_2, PI};

#[inline]
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

#[inline]
pub fn gelu(x: f64) -> f64 {
    x * normal_cdf(x)
}

/// `d/dx gelu(x) = Phi(x) + x * phi(x)`.
#[inline]
pub fn gelu_grad(x: f64) -> f64 {
    normal_cdf(x) + x * (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}
