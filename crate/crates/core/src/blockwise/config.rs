use crate::{Error, Result};

/// Bit width that stores raw `f32` values instead of quantizing.
pub const FLOAT_BITS: u8 = 32;
pub const DEFAULT_BLOCK_SIZE: usize = 128;
pub const DEFAULT_BASELINE_DIM: usize = 384;
pub const BASELINE_BITS: u32 = 32;

/// Storage precision of per-block norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormPrecision {
    #[default]
    F32,
    F16,
}

impl NormPrecision {
    pub fn bits(self) -> u32 {
        match self {
            NormPrecision::F32 => 32,
            NormPrecision::F16 => 16,
        }
    }
}

/// Codec settings for one configuration, written `AESI-{c}-{B}b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodecConfig {
    pub encoded_dim: usize,
    /// 1..=8, or [`FLOAT_BITS`] for float passthrough.
    pub bits: u8,
    pub block_size: usize,
    /// Width of the uncompressed embeddings the compression ratio is measured against.
    pub baseline_dim: usize,
    pub baseline_bits: u32,
    pub norm_precision: NormPrecision,
}

impl CodecConfig {
    pub fn new(encoded_dim: usize, bits: u8) -> Self {
        Self {
            encoded_dim,
            bits,
            block_size: DEFAULT_BLOCK_SIZE,
            baseline_dim: DEFAULT_BASELINE_DIM,
            baseline_bits: BASELINE_BITS,
            norm_precision: NormPrecision::F32,
        }
    }

    pub fn with_block_size(mut self, block_size: usize) -> Self {
        self.block_size = block_size;
        self
    }

    pub fn with_baseline_dim(mut self, h: usize) -> Self {
        self.baseline_dim = h;
        self
    }

    pub fn with_norm_precision(mut self, p: NormPrecision) -> Self {
        self.norm_precision = p;
        self
    }

    pub fn is_float(&self) -> bool {
        self.bits == FLOAT_BITS
    }

    pub fn validate(&self) -> Result<()> {
        if self.encoded_dim == 0 || self.encoded_dim > usize::from(u16::MAX) {
            return Err(Error::config(format!("encoded dim {} out of range", self.encoded_dim)));
        }
        if !((1..=8).contains(&self.bits) || self.is_float()) {
            return Err(Error::config(format!("bits must be 1..=8 or 32, got {}", self.bits)));
        }
        if !self.block_size.is_power_of_two() || self.block_size > 1 << 30 {
            return Err(Error::config(format!(
                "block size {} is not a power of two",
                self.block_size
            )));
        }
        if self.baseline_dim < self.encoded_dim {
            return Err(Error::config(format!(
                "baseline dim {} smaller than encoded dim {}",
                self.baseline_dim, self.encoded_dim
            )));
        }
        Ok(())
    }

    /// Blocks needed for a document of `m` tokens; zero in float mode.
    pub fn num_blocks(&self, m: usize) -> usize {
        if self.is_float() {
            0
        } else {
            (m * self.encoded_dim).div_ceil(self.block_size)
        }
    }

    /// Norm overhead relative to the quantized payload, `norm_bits / (block_size * B)`.
    pub fn norm_overhead_fraction(&self) -> f64 {
        if self.is_float() {
            0.0
        } else {
            f64::from(self.norm_precision.bits()) / (self.block_size as f64 * f64::from(self.bits))
        }
    }
}
