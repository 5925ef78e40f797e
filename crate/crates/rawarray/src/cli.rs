//! Library side of the `ra` command: report and dump rendering, element
//! parsing for `create`, and file comparison.
//!
//! Raw dump modes mirror `od`: a 7-digit octal file offset per line and a
//! final line holding the end offset.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rawarray_core::{ElementKind, Elements, Header, TypeCode, Value, F128, F16};

use crate::error::{Error, Result};
use crate::io::{self, first_difference, open_array, Difference, RaArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum DumpFormat {
    /// Elements decoded per the header's type and byte order.
    #[default]
    Auto,
    /// Whole file, one byte per column in hex.
    Hex,
    /// Whole file as little-endian 64-bit words (`od -t uL`).
    #[value(name = "u64")]
    U64Words,
    /// Data segment as IEEE floats (`od -j HEADER -f`).
    Float,
    /// Whole file as named ASCII characters (`od -a`).
    Ascii,
}

/// `%e`-style scientific notation with six decimals, as `od` and C print it.
pub fn format_sci(x: f64) -> String {
    if x.is_nan() {
        return if x.is_sign_negative() { "-nan".into() } else { "nan".into() };
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    let s = format!("{x:.6e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(2 * bytes.len() + 2), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn format_value(v: Value<'_>) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::UInt(u) => u.to_string(),
        Value::Float(f) => format_sci(f),
        Value::Complex(re, im) => format!("({}, {})", format_sci(re), format_sci(im)),
        Value::Bytes(b) => format!("0x{}", hex(b)),
    }
}

/// Human-readable header report, one field per line.
pub fn info(path: &Path) -> Result<String> {
    let (h, metadata_len) = io::read_header_and_metadata_len(path)?;
    Ok(info_report(&h, metadata_len))
}

pub fn info_report(h: &Header, metadata_len: u64) -> String {
    let kind = match ElementKind::of_header(h) {
        Ok(k) => k.to_string(),
        Err(e) => format!("unresolved ({e})"),
    };
    let dims: Vec<String> = h.dims().iter().map(u64::to_string).collect();
    let mut s = String::new();
    let _ = writeln!(s, "magic: ok");
    let _ = writeln!(s, "endianness: {}", if h.is_big_endian() { "big" } else { "little" });
    let _ = writeln!(s, "eltype: {} ({})", h.type_code().name(), h.eltype());
    let _ = writeln!(s, "kind: {kind}");
    let _ = writeln!(s, "elbyte: {}", h.elbyte());
    let _ = writeln!(s, "data_length: {}", h.data_length());
    let _ = writeln!(s, "ndims: {}", h.ndims());
    let _ = writeln!(s, "dims: {}", dims.join(","));
    let _ = writeln!(s, "header_bytes: {}", h.encoded_len());
    let _ = writeln!(s, "metadata: {metadata_len} bytes");
    s
}

const ASCII_NAMES: [&str; 33] = [
    "nul", "soh", "stx", "etx", "eot", "enq", "ack", "bel", "bs", "ht", "nl", "vt", "ff", "cr", "so", "si", "dle",
    "dc1", "dc2", "dc3", "dc4", "nak", "syn", "etb", "can", "em", "sub", "esc", "fs", "gs", "rs", "us", "sp",
];

/// `od -a` naming: high bit ignored, control characters by name.
fn ascii_name(b: u8) -> String {
    let c = b & 0x7f;
    match c {
        0..=32 => ASCII_NAMES[c as usize].to_string(),
        127 => "del".to_string(),
        _ => (c as char).to_string(),
    }
}

/// Rows of `per_line` items with od-style octal offsets. `items` yields the
/// rendered item and its width in bytes.
fn od_rows(start: u64, per_line: usize, width: usize, items: Vec<(String, u64)>) -> String {
    let mut out = String::new();
    let mut offset = start;
    for row in items.chunks(per_line) {
        let _ = write!(out, "{offset:07o}");
        for (text, bytes) in row {
            let _ = write!(out, " {text:>w$}", w = width);
            offset += bytes;
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{offset:07o}");
    out
}

fn limited<T>(items: impl Iterator<Item = T>, limit: Option<u64>) -> Vec<T> {
    match limit {
        Some(n) => items.take(n as usize).collect(),
        None => items.collect(),
    }
}

/// Renders a file in one of the dump formats. `limit` caps the number of
/// items: elements, floats, words or bytes depending on the format.
pub fn dump(path: &Path, format: DumpFormat, limit: Option<u64>) -> Result<String> {
    match format {
        DumpFormat::Auto | DumpFormat::Float => {
            let loaded = open_array(path)?;
            if format == DumpFormat::Auto {
                dump_elements(&loaded.elements()?, limit)
            } else {
                dump_floats(loaded.header(), loaded.data(), limit)
            }
        }
        raw => {
            let bytes = fs::read(path)?;
            // Validate so malformed files are reported as such.
            Header::decode(&bytes)?;
            Ok(dump_raw(&bytes, raw, limit))
        }
    }
}

pub fn dump_elements(values: &Elements, limit: Option<u64>) -> Result<String> {
    let mut out = String::new();
    for i in limited(0..values.len(), limit) {
        let v = values.get(i).expect("index in range");
        out.push_str(&format_value(v));
        out.push('\n');
    }
    Ok(out)
}

fn dump_floats(h: &Header, data: &[u8], limit: Option<u64>) -> Result<String> {
    let width = match ElementKind::of_header(h) {
        Ok(ElementKind::Float(w)) | Ok(ElementKind::Complex(w)) => w,
        _ => 4,
    };
    let be = h.is_big_endian();
    let read = |c: &[u8]| -> f64 {
        let mut b = c.to_vec();
        if be {
            b.reverse();
        }
        match width {
            2 => F16(u16::from_le_bytes([b[0], b[1]])).to_f64(),
            4 => f32::from_le_bytes(b.try_into().unwrap()) as f64,
            8 => f64::from_le_bytes(b.try_into().unwrap()),
            _ => F128(u128::from_le_bytes(b.try_into().unwrap())).to_f64(),
        }
    };
    let items = limited(data.chunks_exact(width).map(|c| (format_sci(read(c)), width as u64)), limit);
    Ok(od_rows(h.encoded_len() as u64, (16 / width).max(1), 15, items))
}

fn dump_raw(bytes: &[u8], format: DumpFormat, limit: Option<u64>) -> String {
    match format {
        DumpFormat::U64Words => {
            let words = bytes.chunks(8).map(|c| {
                let mut w = [0u8; 8];
                w[..c.len()].copy_from_slice(c);
                (u64::from_le_bytes(w).to_string(), c.len() as u64)
            });
            od_rows(0, 2, 20, limited(words, limit))
        }
        DumpFormat::Ascii => od_rows(0, 16, 3, limited(bytes.iter().map(|&b| (ascii_name(b), 1)), limit)),
        _ => od_rows(0, 16, 2, limited(bytes.iter().map(|&b| (format!("{b:02x}"), 1)), limit)),
    }
}

/// Parses a type name (`struct`, `int`, `uint`, `float`, `complex`) or a
/// numeric code.
pub fn parse_type(name: &str) -> Result<TypeCode> {
    let code = match name.trim().to_ascii_lowercase().as_str() {
        "struct" | "user" => 0,
        "int" | "signed" => 1,
        "uint" | "unsigned" => 2,
        "float" => 3,
        "complex" => 4,
        n => n.parse::<u64>().map_err(|_| Error::Parse(format!("unknown element type '{name}'")))?,
    };
    Ok(TypeCode::from_code(code)?)
}

/// Splits text into value tokens. Commas and parentheses separate tokens,
/// so `(1, -2)` reads as two numbers.
pub fn tokenize(text: &str) -> Vec<&str> {
    text.split(|c: char| c.is_whitespace() || matches!(c, ',' | '(' | ')'))
        .filter(|t| !t.is_empty())
        .collect()
}

fn parse_float(tok: &str) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| Error::Parse(format!("invalid float '{tok}'")))
}

fn parse_hex(tok: &str, stride: usize) -> Result<Vec<u8>> {
    let digits = tok.strip_prefix("0x").unwrap_or(tok);
    if digits.len() != 2 * stride || !digits.is_ascii() {
        return Err(Error::Parse(format!("expected {stride} hex bytes, got '{tok}'")));
    }
    (0..stride)
        .map(|i| u8::from_str_radix(&digits[2 * i..2 * i + 2], 16).map_err(|_| Error::Parse(format!("invalid hex '{tok}'"))))
        .collect()
}

/// Parses value tokens into elements of `kind`. Complex elements take two
/// tokens; struct and wide-integer elements one hex token.
pub fn parse_elements(tokens: &[&str], kind: ElementKind) -> Result<Elements> {
    let native = match kind {
        ElementKind::Int(_) if kind.is_native() => Elements::I64(
            tokens
                .iter()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("invalid integer '{t}'"))))
                .collect::<Result<_>>()?,
        ),
        ElementKind::UInt(_) if kind.is_native() => Elements::U64(
            tokens
                .iter()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("invalid unsigned integer '{t}'"))))
                .collect::<Result<_>>()?,
        ),
        ElementKind::Float(_) => Elements::F64(tokens.iter().map(|t| parse_float(t)).collect::<Result<_>>()?),
        ElementKind::Complex(_) => {
            if tokens.len() % 2 != 0 {
                return Err(Error::Parse("complex values need an even number of components".into()));
            }
            Elements::C64(
                tokens
                    .chunks_exact(2)
                    .map(|p| Ok(rawarray_core::Complex::new(parse_float(p[0])?, parse_float(p[1])?)))
                    .collect::<Result<_>>()?,
            )
        }
        _ => {
            let stride = kind.stride();
            let mut bytes = Vec::with_capacity(tokens.len() * stride);
            for t in tokens {
                bytes.extend(parse_hex(t, stride)?);
            }
            Elements::Opaque { stride, bytes }
        }
    };
    Ok(native.cast(kind)?)
}

/// Where `create` takes its element data from.
#[derive(Debug, Clone, PartialEq)]
pub enum CreateSource {
    /// Whitespace/comma separated values.
    Text(String),
    /// Exactly `data_length` bytes, used verbatim.
    Raw(Vec<u8>),
    /// One value repeated; complex accepts `re` or `re,im`.
    Fill(String),
}

pub fn build_array(
    type_code: TypeCode,
    elbyte: u64,
    dims: &[u64],
    source: &CreateSource,
    big_endian: bool,
) -> Result<RaArray> {
    let header = Header::new(type_code, elbyte, dims, big_endian)?;
    if let CreateSource::Raw(bytes) = source {
        if bytes.len() as u64 != header.data_length() {
            return Err(Error::CountMismatch {
                expected: header.data_length(),
                found: bytes.len() as u64,
                unit: "bytes",
            });
        }
        return RaArray::new(header, bytes.clone());
    }
    let kind = ElementKind::of_header(&header)?;
    let count = header.element_count();
    let values = match source {
        CreateSource::Text(text) => {
            let tokens = tokenize(text);
            let per = if matches!(kind, ElementKind::Complex(_)) { 2 } else { 1 };
            let found = (tokens.len() / per) as u64;
            if found != count || tokens.len() % per != 0 {
                return Err(Error::CountMismatch { expected: count, found, unit: "values" });
            }
            parse_elements(&tokens, kind)?
        }
        CreateSource::Fill(value) => {
            let mut tokens = tokenize(value);
            if matches!(kind, ElementKind::Complex(_)) && tokens.len() == 1 {
                tokens.push("0");
            }
            let one = parse_elements(&tokens, kind)?;
            if one.len() != 1 {
                return Err(Error::Parse(format!("fill needs exactly one value, got '{value}'")));
            }
            let bytes = rawarray_core::encode_elements(&one, kind, big_endian)?;
            let data = bytes.repeat(count as usize);
            return RaArray::new(header, data);
        }
        CreateSource::Raw(_) => unreachable!(),
    };
    RaArray::from_elements(&values, kind, dims, big_endian)
}

/// First content difference between two files, or `None` if identical.
pub fn diff(a: &Path, b: &Path, include_metadata: bool) -> Result<Option<Difference>> {
    let a = open_array(a)?;
    let b = open_array(b)?;
    Ok(first_difference(&a, &b, include_metadata))
}
