//! IDX, the MNIST container: two zero bytes, a type byte, a rank byte,
//! big-endian u32 dims, then big-endian row-major data.
//!
//! Row-major with the last IDX dim fastest is the same memory order as
//! column-major over the reversed dims, so `[60000, 28, 28]` becomes
//! `[28, 28, 60000]` without moving any bytes.

use rawarray_core::{swap_units, ElementKind, Header};

use crate::error::{Error, Result};
use crate::io::RaArray;

fn kind_for(code: u8) -> Option<ElementKind> {
    Some(match code {
        0x08 => ElementKind::UInt(1),
        0x09 => ElementKind::Int(1),
        0x0b => ElementKind::Int(2),
        0x0c => ElementKind::Int(4),
        0x0d => ElementKind::Float(4),
        0x0e => ElementKind::Float(8),
        _ => return None,
    })
}

fn code_for(kind: ElementKind) -> Option<u8> {
    (0x08..=0x0e).find(|&c| kind_for(c) == Some(kind))
}

/// Parses an IDX file into a little-endian array.
pub fn idx_to_array(bytes: &[u8]) -> Result<RaArray> {
    let parse = |m: &str| Error::Parse(format!("idx: {m}"));
    if bytes.len() < 4 || bytes[0] != 0 || bytes[1] != 0 {
        return Err(parse("bad magic"));
    }
    let kind = kind_for(bytes[2]).ok_or_else(|| parse(&format!("unknown type byte {:#04x}", bytes[2])))?;
    let rank = bytes[3] as usize;
    let data_start = 4 + 4 * rank;
    if bytes.len() < data_start {
        return Err(parse("truncated dims"));
    }
    let mut dims: Vec<u64> = bytes[4..data_start]
        .chunks_exact(4)
        .map(|c| u32::from_be_bytes(c.try_into().unwrap()) as u64)
        .collect();
    dims.reverse();
    let header = Header::new(kind.type_code(), kind.stride() as u64, &dims, false)?;
    let data = &bytes[data_start..];
    if data.len() as u64 != header.data_length() {
        return Err(parse(&format!("expected {} data bytes, found {}", header.data_length(), data.len())));
    }
    let mut data = data.to_vec();
    swap_units(&mut data, kind.stride());
    RaArray::new(header, data)
}

/// Encodes an array as IDX. Only the IDX element types are accepted.
pub fn array_to_idx(arr: &RaArray) -> Result<Vec<u8>> {
    let kind = arr.kind()?;
    let code = code_for(kind)
        .ok_or_else(|| Error::UnsupportedSourceShape(format!("{kind} has no IDX type code")))?;
    let h = arr.header();
    if h.ndims() > 255 || h.dims().iter().any(|&d| d > u32::MAX as u64) {
        return Err(Error::UnsupportedSourceShape("dims do not fit IDX".into()));
    }
    let mut out = vec![0, 0, code, h.ndims() as u8];
    for &d in h.dims().iter().rev() {
        out.extend_from_slice(&(d as u32).to_be_bytes());
    }
    let mut data = arr.data().to_vec();
    // To big-endian: swap unless already stored that way.
    if !h.is_big_endian() {
        swap_units(&mut data, kind.stride());
    }
    out.extend_from_slice(&data);
    Ok(out)
}

/// Splits an array along its last (slowest) axis, e.g. an image stack into
/// single images.
pub fn split_last_axis(arr: &RaArray) -> Result<Vec<RaArray>> {
    let h = arr.header();
    let Some((&count, inner)) = h.dims().split_last() else {
        return Err(Error::UnsupportedSourceShape("cannot split a scalar".into()));
    };
    let item = Header::new(h.type_code(), h.elbyte(), inner, h.is_big_endian())?;
    let step = item.data_length() as usize;
    (0..count as usize)
        .map(|i| RaArray::new(item.clone(), arr.data()[i * step..(i + 1) * step].to_vec()))
        .collect()
}
