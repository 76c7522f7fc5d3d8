//! Binary shard files.
//!
//! Layout, all integers little-endian:
//!
//! | bytes | content |
//! |-------|---------|
//! | 4     | magic `SRFC` |
//! | 1     | format version (1) |
//! | 1     | payload mode: 0 raw symbols, 1 chunked file |
//! | 32    | SHA-256 of the code spec |
//! | 4     | node number, 1-based |
//! | 4     | stripe count s |
//! | s * p * w | s field elements, p base-q digits each, w bytes per digit |
//!
//! `w` is the smallest byte width holding q - 1.

use std::path::{Path, PathBuf};

use srfc_core::{Element, Field};

use crate::error::CliError;

pub const MAGIC: &[u8; 4] = b"SRFC";
pub const SHARD_VERSION: u8 = 1;
const HEADER_LEN: usize = 4 + 1 + 1 + 32 + 4 + 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PayloadMode {
    Raw = 0,
    Chunked = 1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shard {
    pub mode: PayloadMode,
    pub spec_hash: [u8; 32],
    /// 0-based in memory.
    pub node: usize,
    pub stripes: Vec<Element>,
}

/// Bytes per base-q digit.
pub fn digit_width(q: u32) -> usize {
    let bits = 32 - (q - 1).leading_zeros() as usize;
    bits.div_ceil(8).max(1)
}

pub fn write_element(field: &Field, e: &Element, out: &mut Vec<u8>) {
    let w = digit_width(field.q());
    for &d in e.coeffs() {
        out.extend_from_slice(&d.to_le_bytes()[..w]);
    }
}

pub fn read_element(field: &Field, bytes: &[u8]) -> Result<Element, CliError> {
    let w = digit_width(field.q());
    let digits = bytes
        .chunks_exact(w)
        .map(|c| {
            let mut buf = [0u8; 4];
            buf[..w].copy_from_slice(c);
            u32::from_le_bytes(buf)
        })
        .collect();
    field.element(digits).map_err(|e| CliError::Invalid(format!("bad field element: {e}")))
}

impl Shard {
    pub fn to_bytes(&self, field: &Field) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.stripes.len() * field.p() * digit_width(field.q()));
        out.extend_from_slice(MAGIC);
        out.push(SHARD_VERSION);
        out.push(self.mode as u8);
        out.extend_from_slice(&self.spec_hash);
        out.extend_from_slice(&((self.node + 1) as u32).to_le_bytes());
        out.extend_from_slice(&(self.stripes.len() as u32).to_le_bytes());
        for e in &self.stripes {
            write_element(field, e, &mut out);
        }
        out
    }

    pub fn from_bytes(field: &Field, bytes: &[u8]) -> Result<Self, CliError> {
        let bad = |m: &str| CliError::Invalid(format!("corrupt shard: {m}"));
        if bytes.len() < HEADER_LEN {
            return Err(bad("truncated header"));
        }
        if &bytes[..4] != MAGIC {
            return Err(bad("bad magic"));
        }
        if bytes[4] != SHARD_VERSION {
            return Err(bad("unsupported version"));
        }
        let mode = match bytes[5] {
            0 => PayloadMode::Raw,
            1 => PayloadMode::Chunked,
            _ => return Err(bad("unknown payload mode")),
        };
        let spec_hash: [u8; 32] = bytes[6..38].try_into().expect("32 bytes");
        let node = u32::from_le_bytes(bytes[38..42].try_into().expect("4 bytes")) as usize;
        let count = u32::from_le_bytes(bytes[42..46].try_into().expect("4 bytes")) as usize;
        if node == 0 {
            return Err(bad("node number 0"));
        }
        let elem_len = field.p() * digit_width(field.q());
        let payload = &bytes[HEADER_LEN..];
        if payload.len() != count * elem_len {
            return Err(bad("payload length does not match stripe count"));
        }
        let stripes = payload.chunks_exact(elem_len).map(|c| read_element(field, c)).collect::<Result<_, _>>()?;
        Ok(Shard { mode, spec_hash, node: node - 1, stripes })
    }
}

/// `<dir>/node_NNN.shard` for 0-based `node`.
pub fn shard_path(dir: &Path, node: usize) -> PathBuf {
    dir.join(format!("node_{:03}.shard", node + 1))
}

pub fn write_shard(dir: &Path, field: &Field, shard: &Shard) -> Result<(), CliError> {
    let path = shard_path(dir, shard.node);
    std::fs::write(&path, shard.to_bytes(field)).map_err(|e| CliError::io(&path, e))
}

/// Loads every shard of an n-node system that is present in `dir`.
/// Shards of another spec, or with inconsistent headers, are errors.
pub fn read_shards(dir: &Path, field: &Field, n: usize, spec_hash: &[u8; 32]) -> Result<Vec<Option<Shard>>, CliError> {
    let mut out = Vec::with_capacity(n);
    for node in 0..n {
        let path = shard_path(dir, node);
        if !path.exists() {
            out.push(None);
            continue;
        }
        let bytes = std::fs::read(&path).map_err(|e| CliError::io(&path, e))?;
        let shard = Shard::from_bytes(field, &bytes).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        if &shard.spec_hash != spec_hash {
            return Err(CliError::Invalid(format!("{}: shard belongs to a different code spec", path.display())));
        }
        if shard.node != node {
            return Err(CliError::Invalid(format!("{}: header names node {}", path.display(), shard.node + 1)));
        }
        out.push(Some(shard));
    }
    let present: Vec<&Shard> = out.iter().flatten().collect();
    if let Some(first) = present.first() {
        if present.iter().any(|s| s.stripes.len() != first.stripes.len() || s.mode != first.mode) {
            return Err(CliError::Invalid("shards disagree on stripe count or payload mode".into()));
        }
    }
    Ok(out)
}
