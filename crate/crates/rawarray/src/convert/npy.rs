//! Import of a safe subset of NumPy `.npy`: C-contiguous arrays of plain
//! numeric dtypes. Object arrays, structured dtypes and Fortran order are
//! refused.

use rawarray_core::{swap_units, ElementKind, Header};

use crate::error::{Error, Result};
use crate::io::RaArray;

const NPY_MAGIC: &[u8; 6] = b"\x93NUMPY";

fn parse_err(m: impl Into<String>) -> Error {
    Error::Parse(format!("npy: {}", m.into()))
}

#[derive(Debug, Clone, PartialEq)]
enum Literal {
    Str(String),
    Bool(bool),
    Int(u64),
    Tuple(Vec<Literal>),
    Other,
}

/// Just enough of a Python literal parser for the npy header dict.
struct DictParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> DictParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(parse_err(format!("expected '{}' in header", c as char)))
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        match self.peek() {
            Some(q @ (b'\'' | b'"')) => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos] != q {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| parse_err("non-utf8 header"))?;
                self.expect(q)?;
                Ok(Literal::Str(text.to_string()))
            }
            Some(b'(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    if self.peek() == Some(b')') {
                        self.pos += 1;
                        break;
                    }
                    items.push(self.literal()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {}
                        _ => return Err(parse_err("bad tuple")),
                    }
                }
                Ok(Literal::Tuple(items))
            }
            Some(b'[') => {
                // Structured dtype lists; skip to the matching bracket.
                let mut depth = 0;
                while self.pos < self.s.len() {
                    match self.s[self.pos] {
                        b'[' => depth += 1,
                        b']' => {
                            depth -= 1;
                            if depth == 0 {
                                self.pos += 1;
                                return Ok(Literal::Other);
                            }
                        }
                        _ => {}
                    }
                    self.pos += 1;
                }
                Err(parse_err("unterminated list"))
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(match word {
                    "True" => Literal::Bool(true),
                    "False" => Literal::Bool(false),
                    w => w.trim_end_matches('L').parse().map(Literal::Int).unwrap_or(Literal::Other),
                })
            }
            _ => Err(parse_err("unexpected character in header")),
        }
    }

    fn dict(&mut self) -> Result<Vec<(String, Literal)>> {
        self.expect(b'{')?;
        let mut entries = Vec::new();
        loop {
            if self.peek() == Some(b'}') {
                self.pos += 1;
                return Ok(entries);
            }
            let Literal::Str(key) = self.literal()? else {
                return Err(parse_err("non-string key"));
            };
            self.expect(b':')?;
            entries.push((key, self.literal()?));
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {}
                _ => return Err(parse_err("bad dict")),
            }
        }
    }
}

/// Element kind and whether the data is big-endian.
fn parse_descr(descr: &str) -> Result<(ElementKind, bool)> {
    let unsupported = || Error::UnsupportedSourceShape(format!("npy dtype '{descr}'"));
    let (order, rest) = match descr.as_bytes().first() {
        Some(b'<' | b'>' | b'|' | b'=') => descr.split_at(1),
        _ => ("=", descr),
    };
    let big_endian = match order {
        ">" => true,
        "=" => cfg!(target_endian = "big"),
        _ => false,
    };
    let mut chars = rest.chars();
    let code = chars.next().ok_or_else(unsupported)?;
    let size: usize = chars.as_str().parse().map_err(|_| unsupported())?;
    let kind = match (code, size) {
        ('b', 1) => ElementKind::UInt(1),
        ('i', 1 | 2 | 4 | 8) => ElementKind::Int(size),
        ('u', 1 | 2 | 4 | 8) => ElementKind::UInt(size),
        // 'f16' would be the platform long double, not IEEE binary128.
        ('f', 2 | 4 | 8) => ElementKind::Float(size),
        ('c', 8 | 16) => ElementKind::Complex(size / 2),
        _ => return Err(unsupported()),
    };
    Ok((kind, big_endian))
}

/// Parses an `.npy` file into a little-endian array.
pub fn npy_to_array(bytes: &[u8]) -> Result<RaArray> {
    if bytes.len() < 10 || &bytes[..6] != NPY_MAGIC {
        return Err(parse_err("bad magic"));
    }
    let (header_len, start): (usize, usize) = match bytes[6] {
        1 => (u16::from_le_bytes([bytes[8], bytes[9]]) as usize, 10),
        2 | 3 => {
            if bytes.len() < 12 {
                return Err(parse_err("truncated"));
            }
            (u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize, 12)
        }
        v => return Err(parse_err(format!("unsupported version {v}"))),
    };
    let dict_end = start.checked_add(header_len).filter(|&e| e <= bytes.len()).ok_or_else(|| parse_err("truncated"))?;
    let entries = DictParser { s: &bytes[start..dict_end], pos: 0 }.dict()?;
    let get = |k: &str| entries.iter().find(|(key, _)| key == k).map(|(_, v)| v);

    let descr = match get("descr") {
        Some(Literal::Str(s)) => s.clone(),
        Some(_) => return Err(Error::UnsupportedSourceShape("npy structured dtype".into())),
        None => return Err(parse_err("missing descr")),
    };
    if descr.trim_start_matches(['<', '>', '|', '=']).starts_with('O') {
        return Err(Error::UnsupportedSourceShape("npy object arrays (pickled data)".into()));
    }
    match get("fortran_order") {
        Some(Literal::Bool(false)) => {}
        Some(Literal::Bool(true)) => return Err(Error::UnsupportedSourceShape("npy fortran_order".into())),
        _ => return Err(parse_err("missing fortran_order")),
    }
    let mut dims = match get("shape") {
        Some(Literal::Tuple(items)) => items
            .iter()
            .map(|l| match l {
                Literal::Int(n) => Ok(*n),
                _ => Err(parse_err("non-integer shape")),
            })
            .collect::<Result<Vec<u64>>>()?,
        _ => return Err(parse_err("missing shape")),
    };
    let (kind, big_endian) = parse_descr(&descr)?;
    // C order: last axis fastest, so reverse for column-major dims.
    dims.reverse();
    let header = Header::new(kind.type_code(), kind.stride() as u64, &dims, false)?;
    let data = &bytes[dict_end..];
    if data.len() as u64 != header.data_length() {
        return Err(parse_err(format!("expected {} data bytes, found {}", header.data_length(), data.len())));
    }
    let mut data = data.to_vec();
    if big_endian {
        swap_units(&mut data, kind.swap_width().unwrap_or(1));
    }
    RaArray::new(header, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn npy(descr: &str, fortran: bool, shape: &str, data: &[u8]) -> Vec<u8> {
        let dict = format!(
            "{{'descr': '{descr}', 'fortran_order': {}, 'shape': {shape}, }}",
            if fortran { "True" } else { "False" }
        );
        let mut header = dict.into_bytes();
        while (10 + header.len() + 1) % 64 != 0 {
            header.push(b' ');
        }
        header.push(b'\n');
        let mut out = NPY_MAGIC.to_vec();
        out.extend_from_slice(&[1, 0]);
        out.extend_from_slice(&(header.len() as u16).to_le_bytes());
        out.extend_from_slice(&header);
        out.extend_from_slice(data);
        out
    }

    #[test]
    fn c_order_f4() {
        let vals = [1.0f32, 2.0, 3.0, 4.0, 5.0, 6.0];
        let data: Vec<u8> = vals.iter().flat_map(|v| v.to_le_bytes()).collect();
        let arr = npy_to_array(&npy("<f4", false, "(2, 3)", &data)).unwrap();
        assert_eq!(arr.header().dims(), &[3, 2]);
        assert_eq!(arr.to_vec::<f32>().unwrap(), vals);
    }

    #[test]
    fn big_endian_and_complex() {
        let data: Vec<u8> = [1i16, -2].iter().flat_map(|v| v.to_be_bytes()).collect();
        let arr = npy_to_array(&npy(">i2", false, "(2,)", &data)).unwrap();
        assert_eq!(arr.to_vec::<i16>().unwrap(), vec![1, -2]);
        assert!(!arr.header().is_big_endian());

        let data: Vec<u8> = [1.5f64, -0.5].iter().flat_map(|v| v.to_le_bytes()).collect();
        let arr = npy_to_array(&npy("<c16", false, "()", &data)).unwrap();
        assert_eq!(arr.header().ndims(), 0);
        assert_eq!(arr.kind().unwrap(), ElementKind::Complex(8));
    }

    #[test]
    fn refused() {
        assert!(matches!(npy_to_array(&npy("|O", false, "(1,)", &[0; 8])), Err(Error::UnsupportedSourceShape(_))));
        assert!(matches!(npy_to_array(&npy("<f4", true, "(1,)", &[0; 4])), Err(Error::UnsupportedSourceShape(_))));
        assert!(matches!(npy_to_array(&npy("<f16", false, "(1,)", &[0; 16])), Err(Error::UnsupportedSourceShape(_))));
        assert!(matches!(npy_to_array(&npy("<f4", false, "(2,)", &[0; 4])), Err(Error::Parse(_))));
        assert!(matches!(npy_to_array(b"\x93NUMPX\x01\x00\x00\x00"), Err(Error::Parse(_))));
        let structured = b"\x93NUMPY\x01\x00\x3c\x00{'descr': [('a', '<i4')], 'fortran_order': False, 'shape': (1,), }";
        assert!(matches!(npy_to_array(structured), Err(Error::UnsupportedSourceShape(_) | Error::Parse(_))));
    }
}
