//! Mapping between byte files and field symbols.
//!
//! Chunked mode prefixes the file with its length as a u64 LE, reads the
//! result as a bit stream (LSB of byte 0 first) and cuts it into symbols of
//! `b = min(floor(log2(q^p)), 64)` bits. Symbol value v is the element whose
//! base-q digits (constant term first) spell v. The symbol stream is padded
//! with zero symbols to a multiple of k; each run of k symbols is one
//! stripe, i.e. one message.
//!
//! Raw mode takes a file of exactly k symbols in the shard digit encoding.

use srfc_core::{Element, Field};

use crate::error::CliError;
use crate::shard::{digit_width, read_element, write_element};

const HEADER: usize = 8;

/// Payload bits per symbol in chunked mode.
pub fn bits_per_symbol(field: &Field) -> u32 {
    match field.order() {
        Some(order) => (127 - order.leading_zeros()).min(64),
        None => 64,
    }
}

fn element_value(field: &Field, e: &Element, bits: u32) -> Result<u64, CliError> {
    let q = field.q() as u128;
    let mut v: u128 = 0;
    for &d in e.coeffs().iter().rev() {
        v = v.checked_mul(q).and_then(|v| v.checked_add(d as u128)).filter(|&v| v >> bits == 0).ok_or_else(|| {
            CliError::Domain("decoded symbol is outside the chunk alphabet; shards are corrupt or mismatched".into())
        })?;
    }
    Ok(v as u64)
}

/// Splits a file into stripes of k symbols.
pub fn file_to_messages(field: &Field, k: usize, data: &[u8]) -> Vec<Vec<Element>> {
    let bits = bits_per_symbol(field) as usize;
    let mut stream = Vec::with_capacity(HEADER + data.len());
    stream.extend_from_slice(&(data.len() as u64).to_le_bytes());
    stream.extend_from_slice(data);
    let total_bits = stream.len() * 8;
    let symbols = total_bits.div_ceil(bits);
    let padded = symbols.div_ceil(k) * k;
    let bit = |j: usize| -> u64 { stream.get(j / 8).map_or(0, |b| ((b >> (j % 8)) & 1) as u64) };
    let values: Vec<Element> = (0..padded)
        .map(|s| {
            let v = (0..bits).fold(0u64, |acc, t| acc | (bit(s * bits + t) << t));
            field.from_index(v as u128)
        })
        .collect();
    values.chunks(k).map(<[Element]>::to_vec).collect()
}

/// Inverse of [`file_to_messages`].
pub fn messages_to_file(field: &Field, messages: &[Vec<Element>]) -> Result<Vec<u8>, CliError> {
    let bits = bits_per_symbol(field);
    let mut stream: Vec<u8> = Vec::new();
    let mut acc: u128 = 0;
    let mut filled = 0u32;
    for e in messages.iter().flatten() {
        acc |= (element_value(field, e, bits)? as u128) << filled;
        filled += bits;
        while filled >= 8 {
            stream.push(acc as u8);
            acc >>= 8;
            filled -= 8;
        }
    }
    if stream.len() < HEADER {
        return Err(CliError::Domain("decoded data is shorter than its length header".into()));
    }
    let len = u64::from_le_bytes(stream[..HEADER].try_into().expect("8 bytes"));
    let body = &stream[HEADER..];
    if len > body.len() as u64 {
        return Err(CliError::Domain(format!("length header says {len} bytes but only {} decoded", body.len())));
    }
    Ok(body[..len as usize].to_vec())
}

/// Size in bytes of a raw k-symbol message file.
pub fn raw_len(field: &Field, k: usize) -> usize {
    k * field.p() * digit_width(field.q())
}

pub fn raw_to_message(field: &Field, k: usize, data: &[u8]) -> Result<Vec<Element>, CliError> {
    let expected = raw_len(field, k);
    if data.len() != expected {
        return Err(CliError::Domain(format!(
            "input is {} bytes but a raw message of k = {k} symbols is {expected} bytes; use --chunked for arbitrary files",
            data.len()
        )));
    }
    data.chunks_exact(field.p() * digit_width(field.q())).map(|c| read_element(field, c)).collect()
}

pub fn message_to_raw(field: &Field, msg: &[Element]) -> Vec<u8> {
    let mut out = Vec::with_capacity(raw_len(field, msg.len()));
    for e in msg {
        write_element(field, e, &mut out);
    }
    out
}
