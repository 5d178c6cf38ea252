//! End-to-end corpus operations: encode with a trained autoencoder,
//! compress and decompress document by document, and evaluate
//! reconstruction quality and storage.

use ndarray::Array2;
use rayon::prelude::*;

use crate::aesi::{decode_batch, encode_batch, AutoencoderParams};
use crate::analysis::{mse_by_df, DfBin, DfTable, Table};
use crate::blockwise::{
    compress_document, compression_ratio_from_overheads, decompress_document, msmarco_padding_overhead, storage_report,
    CodecConfig, CompressedDocument, StorageReport, MSMARCO_REFERENCE_CR,
};
use crate::corpus::{Corpus, EncodedCorpus, EncodedDocument};
use crate::rng::document_seed;
use crate::{Error, Result};

fn check_width(corpus: &Corpus, params: &AutoencoderParams<f32>) -> Result<()> {
    if corpus.dim() != params.h {
        return Err(Error::dim(format!(
            "corpus width {} does not match model width {}",
            corpus.dim(),
            params.h
        )));
    }
    Ok(())
}

pub fn encode_corpus(corpus: &Corpus, params: &AutoencoderParams<f32>) -> Result<EncodedCorpus> {
    check_width(corpus, params)?;
    let docs = corpus
        .docs
        .par_iter()
        .map(|d| {
            let u = corpus.static_rows(d);
            Ok(EncodedDocument {
                ids: d.ids.clone(),
                codes: encode_batch(params, d.context.view(), u.view())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EncodedCorpus {
        encoded_dim: params.c,
        docs,
    })
}

/// Compresses every document under a seed derived from its token ids.
pub fn compress_corpus(
    encoded: &EncodedCorpus,
    config: &CodecConfig,
    base_seed: u64,
) -> Result<Vec<CompressedDocument>> {
    encoded.validate()?;
    encoded
        .docs
        .par_iter()
        .map(|d| compress_document(d.codes.view(), config, document_seed(base_seed, &d.ids)))
        .collect()
}

/// Restores the encoded matrices; token ids come from the corpus the blobs
/// were made from.
pub fn decompress_corpus(blobs: &[CompressedDocument], corpus: &Corpus) -> Result<EncodedCorpus> {
    if blobs.len() != corpus.docs.len() {
        return Err(Error::input(format!(
            "{} blobs for {} documents",
            blobs.len(),
            corpus.docs.len()
        )));
    }
    let encoded_dim = blobs.first().map_or(1, |b| b.encoded_dim);
    let docs = blobs
        .par_iter()
        .zip(&corpus.docs)
        .enumerate()
        .map(|(n, (blob, doc))| {
            if blob.num_tokens != doc.len() || blob.encoded_dim != encoded_dim {
                return Err(Error::input(format!("blob {n} does not match document {n}")));
            }
            Ok(EncodedDocument {
                ids: doc.ids.clone(),
                codes: decompress_document(blob)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EncodedCorpus { encoded_dim, docs })
}

/// Corpus-level reconstruction quality.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconReport {
    /// Mean squared error per coordinate over all tokens.
    pub mse: f64,
    /// `(token id, squared error per coordinate)` for every token occurrence.
    pub per_token: Vec<(u32, f64)>,
    pub by_df: Vec<DfBin>,
}

/// Encodes, optionally compresses and decompresses, decodes and compares
/// with the original contextual vectors.
pub fn eval_recon(
    corpus: &Corpus,
    params: &AutoencoderParams<f32>,
    codec: Option<(&CodecConfig, u64)>,
    df_bin_width: f64,
) -> Result<ReconReport> {
    let mut encoded = encode_corpus(corpus, params)?;
    if let Some((config, seed)) = codec {
        let blobs = compress_corpus(&encoded, config, seed)?;
        encoded = decompress_corpus(&blobs, corpus)?;
    }
    let h = corpus.dim();
    let per_doc = corpus
        .docs
        .par_iter()
        .zip(&encoded.docs)
        .map(|(d, e)| {
            let u = corpus.static_rows(d);
            let recon: Array2<f32> = decode_batch(params, e.codes.view(), u.view())?;
            Ok(d.ids
                .iter()
                .zip(recon.rows().into_iter().zip(d.context.rows()))
                .map(|(&t, (r, v))| {
                    let se: f64 = r.iter().zip(v).map(|(a, b)| f64::from(a - b).powi(2)).sum();
                    (t, se / h as f64)
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let per_token: Vec<(u32, f64)> = per_doc.into_iter().flatten().collect();
    if per_token.is_empty() {
        return Err(Error::input("corpus has no tokens"));
    }
    let mse = per_token.iter().map(|p| p.1).sum::<f64>() / per_token.len() as f64;
    let df = DfTable::from_documents(corpus.docs.iter().map(|d| d.ids.as_slice()))?;
    let by_df = mse_by_df(&per_token, &df, df_bin_width)?;
    Ok(ReconReport { mse, per_token, by_df })
}

/// Storage of a set of blobs against `baseline_dim`-wide 32-bit vectors.
pub fn blob_storage_report(blobs: &[CompressedDocument], baseline_dim: usize) -> Result<StorageReport> {
    let first = blobs.first().ok_or_else(|| Error::input("no blobs"))?;
    if blobs
        .iter()
        .any(|b| b.encoded_dim != first.encoded_dim || b.bits != first.bits || b.block_size != first.block_size)
    {
        return Err(Error::input("blobs were written with different codec settings"));
    }
    let config = CodecConfig::new(first.encoded_dim, first.bits)
        .with_block_size(first.block_size)
        .with_baseline_dim(baseline_dim)
        .with_norm_precision(first.norm_precision);
    let counts: Vec<usize> = blobs.iter().map(|b| b.num_tokens).collect();
    storage_report(&config, &counts)
}

/// Compression ratios implied by the MSMARCO padding overheads at `h = 384`,
/// next to the published reference ratios.
pub fn reference_cr_table() -> Table {
    let mut t = Table::new(["c", "bits", "padding", "closed_form_cr", "reference_cr", "rel_gap"]);
    for &(bits, c, reference) in MSMARCO_REFERENCE_CR.iter() {
        let config = CodecConfig::new(c, bits);
        let padding = if config.is_float() {
            0.0
        } else {
            msmarco_padding_overhead(c).unwrap_or(0.0)
        };
        let cr = compression_ratio_from_overheads(&config, padding);
        t.push([
            c.to_string(),
            bits.to_string(),
            format!("{padding:.3}"),
            format!("{cr:.2}"),
            format!("{reference:.0}"),
            format!("{:+.4}", cr / reference - 1.0),
        ])
        .expect("six columns");
    }
    t
}

pub fn df_table(bins: &[DfBin]) -> Table {
    let mut t = Table::new(["df", "mean_mse", "count"]);
    for b in bins {
        t.push([
            format!("{:.2}", b.df),
            format!("{:.6e}", b.mean_mse),
            b.count.to_string(),
        ])
        .expect("three columns");
    }
    t
}
