use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, WriteBytesExt};
use ndarray::{Array2, ArrayView2, Axis};

use super::{check_len, expect_eof, read_f32s, read_ids, read_magic, read_u32, MAX_ELEMENTS};
use crate::{Error, Result};

pub const CORPUS_MAGIC: &[u8; 4] = b"SDRC";
const VERSION: u16 = 1;
const WHAT: &str = "corpus file";

/// One document: token ids and their contextual embeddings, one row each.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub ids: Vec<u32>,
    pub context: Array2<f32>,
}

impl Document {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// A static embedding table shared by every document plus the documents.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    /// `V x h`, one row per token id.
    pub static_table: Array2<f32>,
    pub docs: Vec<Document>,
}

impl Corpus {
    pub fn new(static_table: Array2<f32>, docs: Vec<Document>) -> Result<Self> {
        let c = Self { static_table, docs };
        c.validate()?;
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.static_table.ncols()
    }

    pub fn vocab_size(&self) -> usize {
        self.static_table.nrows()
    }

    pub fn num_tokens(&self) -> usize {
        self.docs.iter().map(Document::len).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let (v, h) = self.static_table.dim();
        if h == 0 {
            return Err(Error::dim("embedding width must be positive"));
        }
        if self.static_table.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("static table has non-finite values"));
        }
        for (n, d) in self.docs.iter().enumerate() {
            if d.context.dim() != (d.ids.len(), h) {
                return Err(Error::dim(format!(
                    "document {n}: context is {:?}, expected ({}, {h})",
                    d.context.dim(),
                    d.ids.len()
                )));
            }
            if let Some(&t) = d.ids.iter().find(|&&t| t as usize >= v) {
                return Err(Error::input(format!("document {n}: token id {t} >= vocabulary {v}")));
            }
            if d.context.iter().any(|x| !x.is_finite()) {
                return Err(Error::input(format!("document {n}: non-finite embedding")));
            }
        }
        Ok(())
    }

    /// Static embeddings of a document's tokens, `m x h`.
    pub fn static_rows(&self, doc: &Document) -> Array2<f32> {
        let idx: Vec<usize> = doc.ids.iter().map(|&t| t as usize).collect();
        self.static_table.select(Axis(0), &idx)
    }

    /// All tokens of the corpus stacked as `(v, u)` matrices.
    pub fn stacked(&self) -> (Array2<f32>, Array2<f32>) {
        let views: Vec<ArrayView2<f32>> = self.docs.iter().map(|d| d.context.view()).collect();
        let h = self.dim();
        let v = if views.is_empty() {
            Array2::zeros((0, h))
        } else {
            ndarray::concatenate(Axis(0), &views).expect("equal widths")
        };
        let idx: Vec<usize> = self
            .docs
            .iter()
            .flat_map(|d| d.ids.iter().map(|&t| t as usize))
            .collect();
        (v, self.static_table.select(Axis(0), &idx))
    }
}

pub fn write_corpus(corpus: &Corpus, w: impl Write) -> Result<()> {
    corpus.validate()?;
    let mut w = BufWriter::new(w);
    w.write_all(CORPUS_MAGIC)?;
    w.write_u16::<LittleEndian>(VERSION)?;
    w.write_u32::<LittleEndian>(u32_field(corpus.dim())?)?;
    w.write_u32::<LittleEndian>(u32_field(corpus.vocab_size())?)?;
    w.write_u32::<LittleEndian>(u32_field(corpus.docs.len())?)?;
    for &x in corpus.static_table.iter() {
        w.write_f32::<LittleEndian>(x)?;
    }
    for d in &corpus.docs {
        w.write_u32::<LittleEndian>(u32_field(d.len())?)?;
        for &t in &d.ids {
            w.write_u32::<LittleEndian>(t)?;
        }
        for &x in d.context.iter() {
            w.write_f32::<LittleEndian>(x)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_corpus(r: impl Read) -> Result<Corpus> {
    let mut r = BufReader::new(r);
    read_magic(&mut r, CORPUS_MAGIC, VERSION, WHAT)?;
    let h = read_u32(&mut r, WHAT)?;
    let v = read_u32(&mut r, WHAT)?;
    let n = read_u32(&mut r, WHAT)?;
    check_len(v.saturating_mul(h), MAX_ELEMENTS, WHAT)?;
    let table = Array2::from_shape_vec((v, h), read_f32s(&mut r, v * h, WHAT)?).expect("shape");
    let mut docs = Vec::with_capacity(n.min(1 << 20));
    for _ in 0..n {
        let m = read_u32(&mut r, WHAT)?;
        check_len(m.saturating_mul(h), MAX_ELEMENTS, WHAT)?;
        let ids = read_ids(&mut r, m, WHAT)?;
        let context = Array2::from_shape_vec((m, h), read_f32s(&mut r, m * h, WHAT)?).expect("shape");
        docs.push(Document { ids, context });
    }
    expect_eof(&mut r, WHAT)?;
    Corpus::new(table, docs).map_err(|e| Error::format(format!("{WHAT}: {e}")))
}

impl Corpus {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        read_corpus(File::open(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        write_corpus(self, File::create(path)?)
    }
}

pub(super) fn u32_field(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::input(format!("{n} does not fit a 32-bit field")))
}
