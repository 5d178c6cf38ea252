//! Autoencoder with side information and its ablations, trained with
//! explicit backpropagation and Adam.

mod gelu;
mod network;
mod params;
mod train;
mod variant;

use std::fmt::{Debug, Display};

use ndarray::{LinalgScalar, ScalarOperand};
use num_traits::{Float, FromPrimitive};

pub use gelu::{gelu, gelu_grad, normal_cdf};
pub use network::{
    decode, decode_batch, encode, encode_batch, gradients, loss_and_gradients, loss_and_gradients_chunked,
    per_token_mse, reconstruct_batch, reconstruction_loss, TokenPair,
};
pub use params::{read_checkpoint, write_checkpoint, AutoencoderParams, Dense, Gradients};
pub use train::{train, train_from, write_loss_csv, Adam, LossRecord, TrainConfig, TrainOutcome};
pub use variant::Variant;

/// Floating-point types the network runs in: `f32` for training, `f64`
/// for gradient checks.
pub trait Real: Float + FromPrimitive + LinalgScalar + ScalarOperand + Debug + Display + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}
