//! DRIVE: randomized Hadamard rotation, scaling to norm `sqrt(d)`, and
//! per-coordinate rounding to the nearest Gaussian Lloyd-Max centroid. The
//! block's l2 norm travels alongside the indices.

use super::CentroidTable;
use crate::hadamard::{inverse_randomized_transform_inplace, randomized_transform_inplace};
use crate::{Error, Result};

/// Indices and norm of one DRIVE-quantized block.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedBlock {
    pub indices: Vec<u8>,
    /// l2 norm of the block before the transform. Zero marks a degenerate
    /// all-zero block that reconstructs to exactly zero.
    pub norm: f32,
    pub bits: u8,
}

impl QuantizedBlock {
    pub fn is_degenerate(&self) -> bool {
        self.norm == 0.0
    }
}

pub(crate) fn check_finite(x: &[f32]) -> Result<()> {
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::input(format!("non-finite value {} at {i}", x[i])));
    }
    Ok(())
}

pub(crate) fn l2_norm(x: &[f32]) -> f64 {
    x.iter().map(|&v| f64::from(v) * f64::from(v)).sum::<f64>().sqrt()
}

/// The rotated block scaled to norm `sqrt(d)`, plus the original norm.
///
/// Returns an all-zero vector (and norm 0) for an all-zero block.
pub fn normalized_transform(x: &[f32], seed: u64) -> Result<(Vec<f64>, f64)> {
    check_finite(x)?;
    let mut v = x.to_vec();
    randomized_transform_inplace(&mut v, seed)?;
    let norm = l2_norm(x);
    if norm == 0.0 {
        return Ok((vec![0.0; x.len()], 0.0));
    }
    let scale = (x.len() as f64).sqrt() / norm;
    Ok((v.iter().map(|&t| f64::from(t) * scale).collect(), norm))
}

pub fn drive_quantize(x: &[f32], seed: u64, table: &CentroidTable) -> Result<QuantizedBlock> {
    let (y, norm) = normalized_transform(x, seed)?;
    let indices = y.iter().map(|&v| table.nearest(v)).collect();
    Ok(QuantizedBlock {
        indices,
        norm: norm as f32,
        bits: table.bits(),
    })
}

fn check_bits(q: &QuantizedBlock, table: &CentroidTable) -> Result<()> {
    if q.bits != table.bits() {
        return Err(Error::BitsMismatch {
            block: q.bits,
            table: table.bits(),
        });
    }
    Ok(())
}

/// Rescaled centroid vector `(norm / sqrt(d)) * y_hat`, before the inverse rotation.
fn rescaled_centroids(q: &QuantizedBlock, table: &CentroidTable) -> Vec<f32> {
    let scale = f64::from(q.norm) / (q.indices.len() as f64).sqrt();
    q.indices.iter().map(|&k| (table.centroid(k) * scale) as f32).collect()
}

pub fn drive_dequantize(q: &QuantizedBlock, seed: u64, table: &CentroidTable) -> Result<Vec<f32>> {
    check_bits(q, table)?;
    let mut v = rescaled_centroids(q, table);
    inverse_randomized_transform_inplace(&mut v, seed)?;
    Ok(v)
}

/// Bias-correction factor `d / |y_hat|^2` where `y_hat` is the centroid vector.
///
/// Equals `|x|^2 / |(|x| / sqrt(d)) y_hat|^2`, i.e. the squared norm ratio
/// between the input and the rescaled centroids; zero for a zero `y_hat`.
pub fn bias_correction_scalar(q: &QuantizedBlock, table: &CentroidTable) -> f64 {
    let energy: f64 = q.indices.iter().map(|&k| table.centroid(k).powi(2)).sum();
    if energy == 0.0 || q.norm == 0.0 {
        0.0
    } else {
        q.indices.len() as f64 / energy
    }
}

/// DRIVE reconstruction multiplied by [`bias_correction_scalar`].
pub fn drive_bc_dequantize(q: &QuantizedBlock, seed: u64, table: &CentroidTable) -> Result<Vec<f32>> {
    let s = bias_correction_scalar(q, table) as f32;
    let mut v = drive_dequantize(q, seed, table)?;
    for x in v.iter_mut() {
        *x *= s;
    }
    Ok(v)
}
