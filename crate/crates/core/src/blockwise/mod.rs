//! Document-level codec. The encoded token vectors of a document are
//! concatenated row by row, cut into power-of-two blocks (the last one
//! zero-padded) and each block is DRIVE-quantized under a seed derived from
//! the document seed and the block index.

mod bitpack;
mod codec;
mod config;
mod container;
mod storage;

pub use bitpack::{pack, packed_len, unpack};
pub use codec::{compress_document, decompress_document, CompressedDocument, BLOB_MAGIC};
pub use config::{CodecConfig, NormPrecision, BASELINE_BITS, DEFAULT_BASELINE_DIM, DEFAULT_BLOCK_SIZE, FLOAT_BITS};
pub use container::{load_container, read_container, save_container, write_container};
pub use storage::{
    compression_ratio_from_overheads, measure_padding_overhead, msmarco_padding_overhead, storage_report,
    StorageReport, MSMARCO_PADDING_OVERHEAD, MSMARCO_REFERENCE_CR,
};
