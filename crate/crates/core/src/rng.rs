//! Shared randomness.
//!
//! Encoder and decoder must regenerate the same Rademacher signs and dither
//! values from a seed, now and in every future version, so the generator is
//! fixed here rather than borrowed from a crate whose stream may change.
//!
//! The generator is counter based. For a `(seed, stream)` pair the key is
//! `mix64(seed ^ stream)` and the `i`-th output word is
//! `mix64(key + (i + 1) * GOLDEN_GAMMA)` (wrapping arithmetic), where
//! `mix64` is the SplitMix64 finalizer (Stafford variant 13):
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! Rademacher sign `i` is `+1` when bit 0 of word `i` is clear and `-1`
//! otherwise. Dither value `i` is `(word >> 11) * 2^-53 - 0.5`, uniform on
//! `[-0.5, 0.5)`.
//!
//! Block `k` of a document with seed `s` uses seed `s ^ (k * GOLDEN_GAMMA)`,
//! so block 0 shares the document seed.

/// Weyl increment of SplitMix64; also the odd constant for block seeds.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream constant for Rademacher signs ("SIGN").
pub const SIGN_STREAM: u64 = 0x5349_474E;

/// Stream constant for dither values ("DITH").
pub const DITHER_STREAM: u64 = 0x4449_5448;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of block `block_index` inside a document seeded with `seed`.
#[inline]
pub fn block_seed(seed: u64, block_index: u64) -> u64 {
    seed ^ block_index.wrapping_mul(GOLDEN_GAMMA)
}

/// Counter-based word stream for one `(seed, stream)` pair.
#[derive(Debug, Clone, Copy)]
pub struct CounterStream {
    key: u64,
}

impl CounterStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            key: mix64(seed ^ stream),
        }
    }

    #[inline]
    pub fn word(&self, i: u64) -> u64 {
        mix64(self.key.wrapping_add(i.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
    }

    /// `+1.0` or `-1.0` from bit 0 of word `i`.
    #[inline]
    pub fn sign(&self, i: u64) -> i8 {
        if self.word(i) & 1 == 0 {
            1
        } else {
            -1
        }
    }

    /// Uniform on `[-0.5, 0.5)` with 53 bits of resolution.
    #[inline]
    pub fn dither(&self, i: u64) -> f64 {
        (self.word(i) >> 11) as f64 * (1.0 / (1u64 << 53) as f64) - 0.5
    }
}

/// Order-independent document seed from a base seed and the document's token ids.
///
/// Stands in for "hash of the document text": the same tokens always give
/// the same seed regardless of where the document sits in a corpus.
pub fn document_seed(base: u64, token_ids: &[u32]) -> u64 {
    let mut h = mix64(base ^ 0x5344_5231);
    for &t in token_ids {
        h = mix64(h ^ u64::from(t));
    }
    mix64(h ^ token_ids.len() as u64)
}
