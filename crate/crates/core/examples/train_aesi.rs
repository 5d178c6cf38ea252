//! Trains an autoencoder with and without side information on a synthetic
//! corpus, then measures reconstruction error through the 6-bit codec.

use sdr::aesi::{reconstruction_loss, train, TrainConfig, Variant};
use sdr::blockwise::CodecConfig;
use sdr::corpus::{gen_synth, SynthConfig};
use sdr::pipeline::{df_table, eval_recon};

fn main() -> sdr::Result<()> {
    let cfg = SynthConfig {
        vocab: 500,
        h: 32,
        docs: 400,
        ..Default::default()
    };
    let corpus = gen_synth(&cfg)?;
    let (v, u) = corpus.stacked();
    println!("{} documents, {} tokens, h = {}", corpus.docs.len(), v.nrows(), cfg.h);

    let c = 4;
    let codec = CodecConfig::new(c, 6).with_baseline_dim(cfg.h);
    for variant in [Variant::Ae2L, Variant::Aesi2L] {
        let mut tc = TrainConfig::new(variant, cfg.h, c);
        tc.epochs = 5;
        tc.lr = 3e-3;
        let out = train(v.view(), u.view(), &tc)?;
        let mse = reconstruction_loss(&out.params, v.view(), u.view())?;
        let report = eval_recon(&corpus, &out.params, Some((&codec, 7)), 1.0)?;
        println!(
            "\n{variant} c={c}: float MSE {mse:.5}, after 6-bit codec {:.5}",
            report.mse
        );
        print!("{}", df_table(&report.by_df));
    }
    Ok(())
}
