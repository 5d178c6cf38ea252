//! Compresses one document's encoded vectors, writes the blob, reads it
//! back and reports the error and the storage cost.

use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use sdr::blockwise::{
    compress_document, decompress_document, storage_report, CodecConfig, CompressedDocument, NormPrecision,
};

fn main() -> sdr::Result<()> {
    let (m, c) = (77, 16);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let codes = Array2::from_shape_simple_fn((m, c), || StandardNormal.sample(&mut rng));
    let energy: f64 = codes.iter().map(|&v: &f32| f64::from(v).powi(2)).sum();

    println!("{m} tokens x {c} dims");
    for bits in [32, 8, 6, 4, 2] {
        for precision in [NormPrecision::F32, NormPrecision::F16] {
            if bits == 32 && precision == NormPrecision::F16 {
                continue;
            }
            let config = CodecConfig::new(c, bits).with_norm_precision(precision);
            let blob = compress_document(codes.view(), &config, 2024)?.to_bytes();
            let back = decompress_document(&CompressedDocument::from_bytes(&blob)?)?;
            let err: f64 = (&back - &codes).iter().map(|&v| f64::from(v).powi(2)).sum();
            let report = storage_report(&config, &[m])?;
            println!(
                "B={bits:>2} norms {precision:?}: {:>5} bytes  rel err {:.2e}  CR vs h=384 {:.1}",
                blob.len(),
                err / energy,
                report.compression_ratio
            );
        }
    }
    Ok(())
}
