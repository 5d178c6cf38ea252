use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, WriteBytesExt};
use ndarray::Array2;

use super::format::u32_field;
use super::{check_len, expect_eof, read_f32s, read_ids, read_magic, read_u32, MAX_ELEMENTS};
use crate::{Error, Result};

pub const ENCODED_MAGIC: &[u8; 4] = b"SDRE";
const VERSION: u16 = 1;
const WHAT: &str = "encoded file";

#[derive(Debug, Clone, PartialEq)]
pub struct EncodedDocument {
    pub ids: Vec<u32>,
    /// `m x c` encoder outputs.
    pub codes: Array2<f32>,
}

/// Encoder outputs for every document of a corpus, kept with the token ids
/// so that the static side information can be looked up again.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedCorpus {
    pub encoded_dim: usize,
    pub docs: Vec<EncodedDocument>,
}

impl EncodedCorpus {
    pub fn validate(&self) -> Result<()> {
        if self.encoded_dim == 0 {
            return Err(Error::dim("encoded width must be positive"));
        }
        for (n, d) in self.docs.iter().enumerate() {
            if d.codes.dim() != (d.ids.len(), self.encoded_dim) {
                return Err(Error::dim(format!(
                    "document {n}: codes are {:?}, expected ({}, {})",
                    d.codes.dim(),
                    d.ids.len(),
                    self.encoded_dim
                )));
            }
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        read_encoded(File::open(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        write_encoded(self, File::create(path)?)
    }
}

pub fn write_encoded(enc: &EncodedCorpus, w: impl Write) -> Result<()> {
    enc.validate()?;
    let mut w = BufWriter::new(w);
    w.write_all(ENCODED_MAGIC)?;
    w.write_u16::<LittleEndian>(VERSION)?;
    w.write_u32::<LittleEndian>(u32_field(enc.encoded_dim)?)?;
    w.write_u32::<LittleEndian>(u32_field(enc.docs.len())?)?;
    for d in &enc.docs {
        w.write_u32::<LittleEndian>(u32_field(d.ids.len())?)?;
        for &t in &d.ids {
            w.write_u32::<LittleEndian>(t)?;
        }
        for &x in d.codes.iter() {
            w.write_f32::<LittleEndian>(x)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_encoded(r: impl Read) -> Result<EncodedCorpus> {
    let mut r = BufReader::new(r);
    read_magic(&mut r, ENCODED_MAGIC, VERSION, WHAT)?;
    let c = read_u32(&mut r, WHAT)?;
    let n = read_u32(&mut r, WHAT)?;
    let mut docs = Vec::with_capacity(n.min(1 << 20));
    for _ in 0..n {
        let m = read_u32(&mut r, WHAT)?;
        check_len(m.saturating_mul(c), MAX_ELEMENTS, WHAT)?;
        let ids = read_ids(&mut r, m, WHAT)?;
        let codes = Array2::from_shape_vec((m, c), read_f32s(&mut r, m * c, WHAT)?).expect("shape");
        docs.push(EncodedDocument { ids, codes });
    }
    expect_eof(&mut r, WHAT)?;
    let enc = EncodedCorpus { encoded_dim: c, docs };
    enc.validate().map_err(|e| Error::format(format!("{WHAT}: {e}")))?;
    Ok(enc)
}
