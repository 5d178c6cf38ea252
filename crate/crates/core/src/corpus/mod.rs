//! Token-embedding corpora: the `.sdrc` container of static and contextual
//! embeddings, the `.sdre` container of encoded vectors, and a synthetic
//! generator whose contextual vectors are partly predictable from the
//! static ones.

mod encoded;
mod format;
mod synth;

pub use encoded::{read_encoded, write_encoded, EncodedCorpus, EncodedDocument, ENCODED_MAGIC};
pub use format::{read_corpus, write_corpus, Corpus, Document, CORPUS_MAGIC};
pub use synth::{gen_synth, SynthConfig};

use std::io::Read;

use byteorder::{LittleEndian, ReadBytesExt};

use crate::{Error, Result};

fn read_magic(r: &mut impl Read, magic: &[u8; 4], version: u16, what: &str) -> Result<()> {
    let mut got = [0u8; 4];
    r.read_exact(&mut got)
        .map_err(|_| Error::format(format!("{what}: truncated header")))?;
    if &got != magic {
        return Err(Error::format(format!("{what}: bad magic {got:02x?}")));
    }
    let v = read_u16(r, what)?;
    if v != version {
        return Err(Error::format(format!("{what}: unsupported version {v}")));
    }
    Ok(())
}

fn truncated(what: &str) -> impl Fn(std::io::Error) -> Error + '_ {
    move |_| Error::format(format!("{what}: truncated"))
}

fn read_u16(r: &mut impl Read, what: &str) -> Result<u16> {
    r.read_u16::<LittleEndian>().map_err(truncated(what))
}

fn read_u32(r: &mut impl Read, what: &str) -> Result<usize> {
    Ok(r.read_u32::<LittleEndian>().map_err(truncated(what))? as usize)
}

fn read_f32s(r: &mut impl Read, n: usize, what: &str) -> Result<Vec<f32>> {
    let mut out = vec![0f32; n];
    r.read_f32_into::<LittleEndian>(&mut out).map_err(truncated(what))?;
    if out.iter().any(|x| !x.is_finite()) {
        return Err(Error::format(format!("{what}: non-finite value")));
    }
    Ok(out)
}

fn read_ids(r: &mut impl Read, n: usize, what: &str) -> Result<Vec<u32>> {
    let mut out = vec![0u32; n];
    r.read_u32_into::<LittleEndian>(&mut out).map_err(truncated(what))?;
    Ok(out)
}

fn expect_eof(r: &mut impl Read, what: &str) -> Result<()> {
    let mut byte = [0u8; 1];
    match r.read(&mut byte)? {
        0 => Ok(()),
        _ => Err(Error::format(format!("{what}: trailing bytes"))),
    }
}

/// Guards allocations driven by header fields.
fn check_len(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::format(format!("{what}: length {n} exceeds {limit}")));
    }
    Ok(())
}

const MAX_ELEMENTS: usize = 1 << 31;
