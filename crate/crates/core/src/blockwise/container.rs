//! Multi-document container (`.sdr`).
//!
//! `b"SDRS"` | version u16 | blobs, each `u32` length + blob bytes |
//! footer: one u64 byte offset per blob (pointing at its length prefix),
//! blob count u64, `b"SDRX"`.

use std::fs;
use std::io::Cursor;
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use super::CompressedDocument;
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"SDRS";
const FOOTER_MAGIC: &[u8; 4] = b"SDRX";
const VERSION: u16 = 1;

pub fn write_container(docs: &[CompressedDocument]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.write_u16::<LittleEndian>(VERSION).unwrap();
    let mut offsets = Vec::with_capacity(docs.len());
    for doc in docs {
        offsets.push(out.len() as u64);
        let blob = doc.to_bytes();
        out.write_u32::<LittleEndian>(blob.len() as u32).unwrap();
        out.extend_from_slice(&blob);
    }
    for off in offsets {
        out.write_u64::<LittleEndian>(off).unwrap();
    }
    out.write_u64::<LittleEndian>(docs.len() as u64).unwrap();
    out.extend_from_slice(FOOTER_MAGIC);
    out
}

pub fn read_container(bytes: &[u8]) -> Result<Vec<CompressedDocument>> {
    if bytes.len() < 6 + 12 || &bytes[..4] != MAGIC {
        return Err(Error::format("not an .sdr container"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(Error::format(format!("unsupported container version {version}")));
    }
    let tail = &bytes[bytes.len() - 12..];
    if &tail[8..] != FOOTER_MAGIC {
        return Err(Error::format("missing container footer"));
    }
    let count = u64::from_le_bytes(tail[..8].try_into().unwrap()) as usize;
    let index_start = (bytes.len() - 12)
        .checked_sub(count.checked_mul(8).ok_or_else(|| Error::format("bad blob count"))?)
        .ok_or_else(|| Error::format("container index overruns file"))?;
    let mut idx = Cursor::new(&bytes[index_start..bytes.len() - 12]);
    let mut docs = Vec::with_capacity(count);
    for _ in 0..count {
        let off = idx.read_u64::<LittleEndian>()? as usize;
        if off + 4 > index_start {
            return Err(Error::format("blob offset out of range"));
        }
        let len = u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()) as usize;
        let end = off + 4 + len;
        if end > index_start {
            return Err(Error::format("blob overruns container index"));
        }
        docs.push(CompressedDocument::from_bytes(&bytes[off + 4..end])?);
    }
    Ok(docs)
}

pub fn save_container(path: impl AsRef<Path>, docs: &[CompressedDocument]) -> Result<()> {
    fs::write(path, write_container(docs))?;
    Ok(())
}

pub fn load_container(path: impl AsRef<Path>) -> Result<Vec<CompressedDocument>> {
    read_container(&fs::read(path)?)
}
