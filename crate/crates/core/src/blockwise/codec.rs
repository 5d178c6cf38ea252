//! Per-document codec and its binary blob.
//!
//! Blob layout, all integers little-endian:
//!
//! | field      | type                 |
//! |------------|----------------------|
//! | magic      | `b"SDR1"`            |
//! | version    | u16 (1: f32 norms, 2: f16 norms) |
//! | c          | u16                  |
//! | B          | u8 (1..=8, or 32)    |
//! | log2 block | u8                   |
//! | m          | u32                  |
//! | seed       | u64                  |
//! | norms      | `num_blocks` x f32 (or f16) |
//! | payload    | packed indices, `num_blocks * block * B` bits zero-padded to a byte; raw `m * c` f32 when B = 32 |

use std::io::{Cursor, Read};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use half::f16;
use ndarray::{Array2, ArrayView2};

use super::bitpack::{pack, packed_len, unpack};
use super::config::{CodecConfig, NormPrecision, FLOAT_BITS};
use crate::quantize::{drive_dequantize, drive_quantize, CentroidTable, QuantizedBlock};
use crate::rng::block_seed;
use crate::{Error, Result};

pub const BLOB_MAGIC: &[u8; 4] = b"SDR1";
const VERSION_F32_NORMS: u16 = 1;
const VERSION_F16_NORMS: u16 = 2;
const HEADER_LEN: usize = 4 + 2 + 2 + 1 + 1 + 4 + 8;

/// One compressed document.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressedDocument {
    pub encoded_dim: usize,
    pub bits: u8,
    pub block_size: usize,
    pub num_tokens: usize,
    pub seed: u64,
    pub norm_precision: NormPrecision,
    pub norms: Vec<f32>,
    pub payload: Vec<u8>,
}

impl CompressedDocument {
    pub fn is_float(&self) -> bool {
        self.bits == FLOAT_BITS
    }

    pub fn num_blocks(&self) -> usize {
        self.norms.len()
    }

    /// Coordinates actually carried, padding included.
    pub fn padded_len(&self) -> usize {
        if self.is_float() {
            self.num_tokens * self.encoded_dim
        } else {
            self.num_blocks() * self.block_size
        }
    }

    /// Quantization indices of every coordinate, padding included.
    pub fn indices(&self) -> Vec<u8> {
        if self.is_float() {
            return Vec::new();
        }
        unpack(&self.payload, self.bits, self.padded_len())
    }

    /// Bits this document occupies under the storage accounting
    /// (payload plus norms; the blob header is not counted).
    pub fn storage_bits(&self) -> u64 {
        if self.is_float() {
            (self.num_tokens * self.encoded_dim) as u64 * 32
        } else {
            let n = self.num_blocks() as u64;
            n * (self.block_size as u64 * u64::from(self.bits) + u64::from(self.norm_precision.bits()))
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let norm_bytes = self.norms.len() * (self.norm_precision.bits() as usize / 8);
        let mut out = Vec::with_capacity(HEADER_LEN + norm_bytes + self.payload.len());
        out.extend_from_slice(BLOB_MAGIC);
        let version = match self.norm_precision {
            NormPrecision::F32 => VERSION_F32_NORMS,
            NormPrecision::F16 => VERSION_F16_NORMS,
        };
        out.write_u16::<LittleEndian>(version).unwrap();
        out.write_u16::<LittleEndian>(self.encoded_dim as u16).unwrap();
        out.write_u8(self.bits).unwrap();
        out.write_u8(self.block_size.trailing_zeros() as u8).unwrap();
        out.write_u32::<LittleEndian>(self.num_tokens as u32).unwrap();
        out.write_u64::<LittleEndian>(self.seed).unwrap();
        for &n in &self.norms {
            match self.norm_precision {
                NormPrecision::F32 => out.write_f32::<LittleEndian>(n).unwrap(),
                NormPrecision::F16 => out.write_u16::<LittleEndian>(f16::from_f32(n).to_bits()).unwrap(),
            }
        }
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::format("blob shorter than its header"));
        }
        if &bytes[..4] != BLOB_MAGIC {
            return Err(Error::format("bad blob magic"));
        }
        let mut r = Cursor::new(&bytes[4..]);
        let norm_precision = match r.read_u16::<LittleEndian>()? {
            VERSION_F32_NORMS => NormPrecision::F32,
            VERSION_F16_NORMS => NormPrecision::F16,
            v => return Err(Error::format(format!("unsupported blob version {v}"))),
        };
        let encoded_dim = usize::from(r.read_u16::<LittleEndian>()?);
        let bits = r.read_u8()?;
        let log_block = r.read_u8()?;
        let num_tokens = r.read_u32::<LittleEndian>()? as usize;
        let seed = r.read_u64::<LittleEndian>()?;
        if log_block > 30 {
            return Err(Error::format(format!("block exponent {log_block} too large")));
        }
        let config = CodecConfig {
            encoded_dim,
            bits,
            block_size: 1 << log_block,
            baseline_dim: encoded_dim,
            baseline_bits: 32,
            norm_precision,
        };
        config.validate().map_err(|e| Error::format(e.to_string()))?;
        let num_blocks = config.num_blocks(num_tokens);
        let payload_len = if config.is_float() {
            num_tokens * encoded_dim * 4
        } else {
            packed_len(num_blocks * config.block_size, bits)
        };
        let norm_len = num_blocks * (norm_precision.bits() as usize / 8);
        if bytes.len() != HEADER_LEN + norm_len + payload_len {
            return Err(Error::format(format!(
                "blob length {} does not match header (expected {})",
                bytes.len(),
                HEADER_LEN + norm_len + payload_len
            )));
        }
        let mut norms = Vec::with_capacity(num_blocks);
        for _ in 0..num_blocks {
            norms.push(match norm_precision {
                NormPrecision::F32 => r.read_f32::<LittleEndian>()?,
                NormPrecision::F16 => f16::from_bits(r.read_u16::<LittleEndian>()?).to_f32(),
            });
        }
        let mut payload = vec![0u8; payload_len];
        r.read_exact(&mut payload)?;
        Ok(Self {
            encoded_dim,
            bits,
            block_size: config.block_size,
            num_tokens,
            seed,
            norm_precision,
            norms,
            payload,
        })
    }
}

/// Concatenates the rows of `encoded`, splits into zero-padded blocks and
/// quantizes each block with DRIVE under its own derived seed.
pub fn compress_document(encoded: ArrayView2<'_, f32>, config: &CodecConfig, seed: u64) -> Result<CompressedDocument> {
    config.validate()?;
    let (m, c) = encoded.dim();
    if c != config.encoded_dim {
        return Err(Error::config(format!(
            "matrix has {c} columns, config expects {}",
            config.encoded_dim
        )));
    }
    if m == 0 || m > u32::MAX as usize {
        return Err(Error::input(format!("document must have 1..=2^32-1 tokens, got {m}")));
    }
    if let Some(v) = encoded.iter().find(|v| !v.is_finite()) {
        return Err(Error::input(format!("non-finite value {v} in document")));
    }
    let flat: Vec<f32> = encoded.iter().copied().collect();

    if config.is_float() {
        let mut payload = Vec::with_capacity(flat.len() * 4);
        for v in &flat {
            payload.extend_from_slice(&v.to_le_bytes());
        }
        return Ok(CompressedDocument {
            encoded_dim: c,
            bits: FLOAT_BITS,
            block_size: config.block_size,
            num_tokens: m,
            seed,
            norm_precision: config.norm_precision,
            norms: Vec::new(),
            payload,
        });
    }

    let table = CentroidTable::standard(config.bits)?;
    let num_blocks = config.num_blocks(m);
    let mut norms = Vec::with_capacity(num_blocks);
    let mut indices = Vec::with_capacity(num_blocks * config.block_size);
    let mut block = vec![0.0f32; config.block_size];
    for k in 0..num_blocks {
        let start = k * config.block_size;
        let end = (start + config.block_size).min(flat.len());
        block.fill(0.0);
        block[..end - start].copy_from_slice(&flat[start..end]);
        let q = drive_quantize(&block, block_seed(seed, k as u64), table)?;
        norms.push(match config.norm_precision {
            NormPrecision::F32 => q.norm,
            NormPrecision::F16 => f16::from_f32(q.norm).to_f32(),
        });
        indices.extend_from_slice(&q.indices);
    }
    Ok(CompressedDocument {
        encoded_dim: c,
        bits: config.bits,
        block_size: config.block_size,
        num_tokens: m,
        seed,
        norm_precision: config.norm_precision,
        norms,
        payload: pack(&indices, config.bits),
    })
}

/// Dequantizes every block, drops the padding and reshapes to `m x c`.
pub fn decompress_document(doc: &CompressedDocument) -> Result<Array2<f32>> {
    let (m, c) = (doc.num_tokens, doc.encoded_dim);
    let n = m * c;
    if doc.is_float() {
        if doc.payload.len() != n * 4 {
            return Err(Error::format("float payload length mismatch"));
        }
        let values = doc
            .payload
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            .collect();
        return Array2::from_shape_vec((m, c), values).map_err(|e| Error::format(e.to_string()));
    }
    let table = CentroidTable::standard(doc.bits)?;
    if doc.payload.len() != packed_len(doc.padded_len(), doc.bits) || doc.num_blocks() != n.div_ceil(doc.block_size) {
        return Err(Error::format("payload does not match block layout"));
    }
    let indices = doc.indices();
    let mut flat = Vec::with_capacity(doc.padded_len());
    for (k, chunk) in indices.chunks_exact(doc.block_size).enumerate() {
        let q = QuantizedBlock {
            indices: chunk.to_vec(),
            norm: doc.norms[k],
            bits: doc.bits,
        };
        flat.extend(drive_dequantize(&q, block_seed(doc.seed, k as u64), table)?);
    }
    flat.truncate(n);
    Array2::from_shape_vec((m, c), flat).map_err(|e| Error::format(e.to_string()))
}
