//! Compression ratios from block accounting on a synthetic length
//! distribution, next to the closed form fed with reference overheads.

use sdr::blockwise::{storage_report, CodecConfig};
use sdr::corpus::{gen_synth, SynthConfig};
use sdr::pipeline::reference_cr_table;

fn main() -> sdr::Result<()> {
    println!("closed form with reference padding overheads\n{}", reference_cr_table());

    let corpus = gen_synth(&SynthConfig {
        vocab: 1000,
        h: 8,
        docs: 5000,
        ..Default::default()
    })?;
    let lengths: Vec<usize> = corpus.docs.iter().map(|d| d.ids.len()).collect();
    println!("block accounting on {} synthetic documents", lengths.len());
    for bits in [32, 6, 5, 4] {
        for c in [16, 12, 8, 4] {
            let r = storage_report(&CodecConfig::new(c, bits), &lengths)?;
            println!(
                "c={c:>2} B={bits:>2}  padding {:.3}  norms {:.3}  CR {:.1}",
                r.padding_overhead_fraction, r.norm_overhead_fraction, r.compression_ratio
            );
        }
    }
    Ok(())
}
