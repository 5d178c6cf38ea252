//! Storage accounting: payload bits, norm and padding overheads, and the
//! compression ratio against `h`-wide 32-bit embeddings.

use super::CodecConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StorageReport {
    pub payload_bits: u64,
    pub baseline_bits: u64,
    /// Norm bits relative to quantized payload bits, `32 / (block * B)`.
    pub norm_overhead_fraction: f64,
    /// Padded coordinates relative to real ones.
    pub padding_overhead_fraction: f64,
    pub compression_ratio: f64,
}

/// `(sum padded - sum m*c) / sum m*c` over a corpus.
pub fn measure_padding_overhead(doc_token_counts: &[usize], c: usize, block_size: usize) -> f64 {
    let (real, padded) = doc_token_counts.iter().fold((0u64, 0u64), |(r, p), &m| {
        let n = (m * c) as u64;
        (r + n, p + n.div_ceil(block_size as u64) * block_size as u64)
    });
    if real == 0 {
        return 0.0;
    }
    (padded - real) as f64 / real as f64
}

pub fn storage_report(config: &CodecConfig, doc_token_counts: &[usize]) -> Result<StorageReport> {
    config.validate()?;
    if doc_token_counts.is_empty() {
        return Err(Error::input("storage report needs at least one document"));
    }
    let c = config.encoded_dim as u64;
    let tokens: u64 = doc_token_counts.iter().map(|&m| m as u64).sum();
    if tokens == 0 {
        return Err(Error::input("corpus has no tokens"));
    }
    let baseline_bits = tokens * config.baseline_dim as u64 * u64::from(config.baseline_bits);
    let (payload_bits, padding) = if config.is_float() {
        (tokens * c * 32, 0.0)
    } else {
        let per_block = config.block_size as u64 * u64::from(config.bits) + u64::from(config.norm_precision.bits());
        let blocks: u64 = doc_token_counts.iter().map(|&m| config.num_blocks(m) as u64).sum();
        (
            blocks * per_block,
            measure_padding_overhead(doc_token_counts, config.encoded_dim, config.block_size),
        )
    };
    Ok(StorageReport {
        payload_bits,
        baseline_bits,
        norm_overhead_fraction: config.norm_overhead_fraction(),
        padding_overhead_fraction: padding,
        compression_ratio: baseline_bits as f64 / payload_bits as f64,
    })
}

/// Compression ratio implied by a corpus-level padding overhead:
/// `h * 32 / (c * B * (1 + padding) * (1 + norm_overhead))`.
pub fn compression_ratio_from_overheads(config: &CodecConfig, padding_overhead: f64) -> f64 {
    let baseline = config.baseline_dim as f64 * f64::from(config.baseline_bits);
    let bits = if config.is_float() {
        32.0
    } else {
        f64::from(config.bits)
    };
    let padding = if config.is_float() { 0.0 } else { padding_overhead };
    baseline / (config.encoded_dim as f64 * bits * (1.0 + padding) * (1.0 + config.norm_overhead_fraction()))
}

/// Padding overheads measured on 100k MSMARCO-dev documents at block size
/// 128, keyed by encoded width.
pub const MSMARCO_PADDING_OVERHEAD: [(usize, f64); 4] = [(4, 0.201), (8, 0.097), (12, 0.067), (16, 0.045)];

/// Reference compression ratios for MSMARCO at `h = 384`, block 128:
/// `(bits, c, ratio)`.
pub const MSMARCO_REFERENCE_CR: [(u8, usize, f64); 16] = [
    (32, 16, 24.0),
    (32, 12, 32.0),
    (32, 8, 48.0),
    (32, 4, 96.0),
    (6, 16, 121.0),
    (6, 12, 159.0),
    (6, 8, 231.0),
    (6, 4, 423.0),
    (5, 16, 145.0),
    (5, 12, 190.0),
    (5, 8, 277.0),
    (5, 4, 506.0),
    (4, 16, 181.0),
    (4, 12, 236.0),
    (4, 8, 344.0),
    (4, 4, 629.0),
];

pub fn msmarco_padding_overhead(c: usize) -> Option<f64> {
    MSMARCO_PADDING_OVERHEAD.iter().find(|(k, _)| *k == c).map(|&(_, p)| p)
}
