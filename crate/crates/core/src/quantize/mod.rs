//! Scalar quantizers: DRIVE and its bias-corrected variant, the min-max
//! rounding baselines with and without a Hadamard pre-rotation, and the
//! Gaussian Lloyd-Max centroid tables DRIVE rounds to.

mod centroids;
mod drive;
mod rounding;
mod scheme;
#[allow(clippy::excessive_precision)]
mod tables;

pub use centroids::{gaussian_lloyd_max, CentroidTable, CONVERGENCE_TOL, MAX_BITS, MIN_BITS};
pub use drive::{
    bias_correction_scalar, drive_bc_dequantize, drive_dequantize, drive_quantize, normalized_transform, QuantizedBlock,
};
pub use rounding::{
    dr_dequantize, dr_quantize, hadamard_wrap, minmax_dequantize, minmax_quantize, sd_dequantize, sd_quantize,
    sr_dequantize, sr_quantize, HadamardWrapped, MinMaxBlock, MinMaxParams, RoundingKind,
};
pub use scheme::Scheme;
