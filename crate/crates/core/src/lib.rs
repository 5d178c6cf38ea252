//! Succinct document representations for late-interaction rankers.
//!
//! Contextual token embeddings are compressed in two stages:
//!
//! 1. [`aesi`]: an autoencoder that receives the token's static embedding as
//!    side information on both the encoder and decoder, shrinking each
//!    `h`-wide vector to a handful of coordinates.
//! 2. [`blockwise`]: the encoded vectors of one document are concatenated,
//!    cut into power-of-two blocks and quantized block by block with a
//!    randomized Hadamard transform followed by Gaussian Lloyd-Max rounding
//!    ([`quantize`], [`hadamard`]).
//!
//! [`analysis`] holds the measurement side (reconstruction error, document
//! frequency binning, entropy, rate-distortion bound, quantizer Monte-Carlo,
//! ranking metrics) and [`corpus`] the on-disk corpus format plus a synthetic
//! corpus generator. [`pipeline`] glues the stages together for the `sdr`
//! binary and the examples.

pub mod aesi;
pub mod analysis;
pub mod blockwise;
pub mod corpus;
mod error;
pub mod hadamard;
pub mod pipeline;
pub mod quantize;
pub mod rng;

pub use error::{Error, Result};
