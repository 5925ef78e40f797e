//! PNG <-> RawArray for 8- and 16-bit unsigned images.
//!
//! Grayscale images map to dims `[width, height]`; images with more than one
//! channel to `[channels, width, height]`. With column-major order that is
//! exactly PNG's interleaved, row-by-row pixel layout.

use std::io::{BufRead, Cursor, Seek};

use png::{BitDepth, ColorType, Decoder, Encoder, Transformations};
use rawarray_core::{normalize_to_little_endian, swap_units, ElementKind, Header, TypeCode};

use crate::error::{Error, Result};
use crate::io::RaArray;

/// Decoded pixels in PNG byte order (16-bit samples big-endian).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pixels {
    pub width: u32,
    pub height: u32,
    pub channels: u8,
    pub bytes_per_sample: u8,
    pub data: Vec<u8>,
}

fn png_err(e: png::DecodingError) -> Error {
    match e {
        png::DecodingError::IoError(io) => Error::Io(io),
        other => Error::Parse(format!("png: {other}")),
    }
}

fn png_enc_err(e: png::EncodingError) -> Error {
    match e {
        png::EncodingError::IoError(io) => Error::Io(io),
        other => Error::Parse(format!("png: {other}")),
    }
}

/// Decodes a PNG, expanding palettes and low bit depths to 8 bits.
pub fn decode_png<R: BufRead + Seek>(src: R) -> Result<Pixels> {
    let mut decoder = Decoder::new(src);
    decoder.set_transformations(Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(png_err)?;
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::UnsupportedSourceShape("png too large".into()))?;
    let mut data = vec![0u8; size];
    let info = reader.next_frame(&mut data).map_err(png_err)?;
    data.truncate(info.buffer_size());
    let channels = match info.color_type {
        ColorType::Grayscale => 1,
        ColorType::GrayscaleAlpha => 2,
        ColorType::Rgb => 3,
        ColorType::Rgba => 4,
        ColorType::Indexed => return Err(Error::UnsupportedSourceShape("unexpanded palette".into())),
    };
    let bytes_per_sample = match info.bit_depth {
        BitDepth::Eight => 1,
        BitDepth::Sixteen => 2,
        other => return Err(Error::UnsupportedSourceShape(format!("png bit depth {other:?}"))),
    };
    Ok(Pixels { width: info.width, height: info.height, channels, bytes_per_sample, data })
}

pub fn encode_png(px: &Pixels) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut enc = Encoder::new(&mut out, px.width, px.height);
    enc.set_color(match px.channels {
        1 => ColorType::Grayscale,
        2 => ColorType::GrayscaleAlpha,
        3 => ColorType::Rgb,
        4 => ColorType::Rgba,
        c => return Err(Error::UnsupportedSourceShape(format!("{c} channels"))),
    });
    enc.set_depth(if px.bytes_per_sample == 2 { BitDepth::Sixteen } else { BitDepth::Eight });
    let mut writer = enc.write_header().map_err(png_enc_err)?;
    writer.write_image_data(&px.data).map_err(png_enc_err)?;
    writer.finish().map_err(png_enc_err)?;
    Ok(out)
}

pub fn pixels_to_array(px: Pixels) -> Result<RaArray> {
    let (w, h) = (px.width as u64, px.height as u64);
    let dims: Vec<u64> = if px.channels == 1 { vec![w, h] } else { vec![px.channels as u64, w, h] };
    let header = Header::new(TypeCode::UInt, px.bytes_per_sample as u64, &dims, false)?;
    let mut data = px.data;
    swap_units(&mut data, px.bytes_per_sample as usize);
    RaArray::new(header, data)
}

pub fn array_to_pixels(arr: &RaArray) -> Result<Pixels> {
    let h = arr.header();
    let kind = arr.kind()?;
    let bytes_per_sample = match kind {
        ElementKind::UInt(1) => 1u8,
        ElementKind::UInt(2) => 2,
        other => return Err(Error::UnsupportedSourceShape(format!("png needs uint8 or uint16 samples, not {other}"))),
    };
    let (channels, w, hgt) = match *h.dims() {
        [w, hgt] => (1u64, w, hgt),
        [c @ 1..=4, w, hgt] => (c, w, hgt),
        _ => {
            return Err(Error::UnsupportedSourceShape(format!(
                "png needs dims [width, height] or [channels<=4, width, height], got {:?}",
                h.dims()
            )))
        }
    };
    let fits = |v: u64| v >= 1 && v <= u32::MAX as u64;
    if !fits(w) || !fits(hgt) {
        return Err(Error::UnsupportedSourceShape(format!("png size {w}x{hgt}")));
    }
    let mut data = arr.data().to_vec();
    normalize_to_little_endian(&mut data, kind, h.is_big_endian());
    swap_units(&mut data, bytes_per_sample as usize);
    Ok(Pixels { width: w as u32, height: hgt as u32, channels: channels as u8, bytes_per_sample, data })
}

pub fn png_to_array(bytes: &[u8]) -> Result<RaArray> {
    pixels_to_array(decode_png(Cursor::new(bytes))?)
}

pub fn array_to_png(arr: &RaArray) -> Result<Vec<u8>> {
    encode_png(&array_to_pixels(arr)?)
}
