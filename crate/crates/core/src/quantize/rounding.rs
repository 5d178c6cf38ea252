//! Min-max uniform quantizers used as baselines: deterministic rounding
//! (DR), stochastic rounding (SR) and subtractive dithering (SD), plus their
//! variants preceded by a randomized Hadamard transform.
//!
//! Each block is mapped to `[0, 2^B - 1]` through its own minimum and
//! maximum. SR adds a dither `u ~ U[-0.5, 0.5)` before rounding; SD also
//! subtracts the same `u` (regenerated from the seed) before mapping back.

use super::drive::check_finite;
use crate::hadamard::{inverse_randomized_transform_inplace, randomized_transform_inplace};
use crate::rng::{CounterStream, DITHER_STREAM};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinMaxParams {
    pub lo: f32,
    pub hi: f32,
}

impl MinMaxParams {
    pub fn of(x: &[f32]) -> Self {
        let (lo, hi) = x.iter().fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
        Self { lo, hi }
    }

    pub fn is_constant(&self) -> bool {
        self.hi == self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoundingKind {
    Deterministic,
    Stochastic,
    Subtractive,
}

/// Indices plus the normalization range of one block.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMaxBlock {
    pub indices: Vec<u8>,
    pub params: MinMaxParams,
    pub bits: u8,
}

/// Rounds to the nearest integer; exact halves go down.
#[inline]
fn round_half_down(v: f64) -> f64 {
    (v - 0.5).ceil()
}

fn check_bits(bits: u8) -> Result<()> {
    if !(1..=8).contains(&bits) {
        return Err(Error::config(format!("bit width {bits} outside 1..=8")));
    }
    Ok(())
}

fn dither_needed(kind: RoundingKind) -> bool {
    kind != RoundingKind::Deterministic
}

pub fn minmax_quantize(kind: RoundingKind, x: &[f32], bits: u8, seed: u64) -> Result<MinMaxBlock> {
    check_bits(bits)?;
    check_finite(x)?;
    if x.is_empty() {
        return Err(Error::dim("empty block"));
    }
    let params = MinMaxParams::of(x);
    if params.is_constant() {
        return Ok(MinMaxBlock {
            indices: vec![0; x.len()],
            params,
            bits,
        });
    }
    let top = f64::from((1u16 << bits) - 1);
    let (lo, span) = (f64::from(params.lo), f64::from(params.hi) - f64::from(params.lo));
    let stream = CounterStream::new(seed, DITHER_STREAM);
    let indices = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut t = (f64::from(v) - lo) / span * top;
            if dither_needed(kind) {
                t += stream.dither(i as u64);
            }
            round_half_down(t).clamp(0.0, top) as u8
        })
        .collect();
    Ok(MinMaxBlock { indices, params, bits })
}

pub fn minmax_dequantize(kind: RoundingKind, block: &MinMaxBlock, seed: u64) -> Vec<f32> {
    let MinMaxParams { lo, hi } = block.params;
    if block.params.is_constant() {
        return vec![lo; block.indices.len()];
    }
    let top = ((1u16 << block.bits) - 1) as f32;
    let span = hi - lo;
    match kind {
        RoundingKind::Deterministic | RoundingKind::Stochastic => {
            block.indices.iter().map(|&k| lo + f32::from(k) / top * span).collect()
        }
        RoundingKind::Subtractive => {
            let stream = CounterStream::new(seed, DITHER_STREAM);
            let (lo, span, top) = (f64::from(lo), f64::from(span), f64::from(top));
            block
                .indices
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    let t = f64::from(k) - stream.dither(i as u64);
                    (lo + t / top * span) as f32
                })
                .collect()
        }
    }
}

pub fn dr_quantize(x: &[f32], bits: u8) -> Result<MinMaxBlock> {
    minmax_quantize(RoundingKind::Deterministic, x, bits, 0)
}

pub fn dr_dequantize(block: &MinMaxBlock) -> Vec<f32> {
    minmax_dequantize(RoundingKind::Deterministic, block, 0)
}

pub fn sr_quantize(x: &[f32], bits: u8, seed: u64) -> Result<MinMaxBlock> {
    minmax_quantize(RoundingKind::Stochastic, x, bits, seed)
}

pub fn sr_dequantize(block: &MinMaxBlock) -> Vec<f32> {
    minmax_dequantize(RoundingKind::Stochastic, block, 0)
}

pub fn sd_quantize(x: &[f32], bits: u8, seed: u64) -> Result<MinMaxBlock> {
    minmax_quantize(RoundingKind::Subtractive, x, bits, seed)
}

pub fn sd_dequantize(block: &MinMaxBlock, seed: u64) -> Vec<f32> {
    minmax_dequantize(RoundingKind::Subtractive, block, seed)
}

/// A min-max quantizer applied after a randomized Hadamard transform drawn
/// from the same seed as the dither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HadamardWrapped {
    pub kind: RoundingKind,
}

pub fn hadamard_wrap(kind: RoundingKind) -> HadamardWrapped {
    HadamardWrapped { kind }
}

impl HadamardWrapped {
    pub fn quantize(&self, x: &[f32], bits: u8, seed: u64) -> Result<MinMaxBlock> {
        check_finite(x)?;
        let mut v = x.to_vec();
        randomized_transform_inplace(&mut v, seed)?;
        minmax_quantize(self.kind, &v, bits, seed)
    }

    pub fn dequantize(&self, block: &MinMaxBlock, seed: u64) -> Result<Vec<f32>> {
        let mut v = minmax_dequantize(self.kind, block, seed);
        inverse_randomized_transform_inplace(&mut v, seed)?;
        Ok(v)
    }
}
