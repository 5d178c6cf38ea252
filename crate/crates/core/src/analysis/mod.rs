//! Measurement utilities: document frequency, index entropy, the
//! rate-distortion bound, a Monte-Carlo quantizer harness, ranking metrics
//! and report tables.

mod bench;
mod df;
mod info;
mod metrics;
mod report;

pub use bench::{quant_bench, InputDist, QuantBenchResult};
pub use df::{df, mse_by_df, DfBin, DfTable, DEFAULT_DF_BIN_WIDTH};
pub use info::{empirical_entropy, rd_optimal_rate};
pub use metrics::{mrr_at_k, ndcg_at_k};
pub use report::Table;
