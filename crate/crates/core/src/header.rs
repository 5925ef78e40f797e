//! On-disk header model.
//!
//! | Offset        | Type     | Length          | Field                 |
//! |---------------|----------|-----------------|-----------------------|
//! | 0             | u64      | 8               | magic (`"rawarray"`)  |
//! | 8             | u64      | 8               | flags                 |
//! | 16            | u64      | 8               | element type code     |
//! | 24            | u64      | 8               | element size (bytes)  |
//! | 32            | u64      | 8               | data length (bytes)   |
//! | 40            | u64      | 8               | ndims                 |
//! | 48            | u64[]    | 8 × ndims       | dims                  |
//! | 48 + 8·ndims  | u8[]     | data length     | array data            |
//! | ...           | u8[]     | rest of file    | optional metadata     |
//!
//! Header words are always little-endian. The big-endian flag only describes
//! the data segment.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// The magic word. Written little-endian it spells `rawarray`.
pub const MAGIC: u64 = 0x7961_7272_6177_6172;
pub const MAGIC_BYTES: [u8; 8] = *b"rawarray";

/// Length of the fixed part of the header, before the dims.
pub const FIXED_HEADER_LEN: usize = 48;

/// Decode refuses ndims above this.
pub const MAX_NDIMS: u64 = 65_535;

/// Flag bit 0: the data segment is big-endian.
pub const FLAG_BIG_ENDIAN: u64 = 1;
const KNOWN_FLAGS: u64 = FLAG_BIG_ENDIAN;

/// Total header length in bytes for `ndims` dimensions.
pub const fn header_len(ndims: usize) -> usize {
    FIXED_HEADER_LEN + 8 * ndims
}

/// Element type codes. Codes 5 and up are reserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum TypeCode {
    UserStruct = 0,
    Int = 1,
    UInt = 2,
    Float = 3,
    Complex = 4,
}

impl TypeCode {
    pub fn from_code(code: u64) -> Result<Self> {
        Ok(match code {
            0 => TypeCode::UserStruct,
            1 => TypeCode::Int,
            2 => TypeCode::UInt,
            3 => TypeCode::Float,
            4 => TypeCode::Complex,
            other => return Err(Error::ReservedType(other)),
        })
    }

    pub const fn code(self) -> u64 {
        self as u64
    }

    /// Short human name, as used by the CLI.
    pub const fn name(self) -> &'static str {
        match self {
            TypeCode::UserStruct => "struct",
            TypeCode::Int => "int",
            TypeCode::UInt => "uint",
            TypeCode::Float => "float",
            TypeCode::Complex => "complex",
        }
    }

    fn check_elbyte(self, elbyte: u64) -> Result<()> {
        let ok = match self {
            TypeCode::Complex => elbyte >= 2 && elbyte % 2 == 0,
            _ => elbyte >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidType { eltype: self.code(), elbyte })
        }
    }
}

impl fmt::Display for TypeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated header. Fields are private so every value in circulation
/// satisfies `data_length == elbyte * product(dims)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Header {
    flags: u64,
    type_code: TypeCode,
    elbyte: u64,
    data_length: u64,
    dims: Vec<u64>,
}

fn checked_data_length(elbyte: u64, dims: &[u64]) -> Option<u64> {
    dims.iter().try_fold(elbyte, |acc, &d| acc.checked_mul(d))
}

/// Builds a header from a raw type code; see [`Header::new`].
pub fn make_header(eltype: u64, elbyte: u64, dims: &[u64], big_endian: bool) -> Result<Header> {
    Header::new(TypeCode::from_code(eltype)?, elbyte, dims, big_endian)
}

impl Header {
    /// Computes the data length from `elbyte` and `dims`.
    pub fn new(type_code: TypeCode, elbyte: u64, dims: &[u64], big_endian: bool) -> Result<Self> {
        type_code.check_elbyte(elbyte)?;
        if dims.len() as u64 > MAX_NDIMS {
            return Err(Error::DimsTooLarge(dims.len() as u64));
        }
        let data_length = checked_data_length(elbyte, dims).ok_or(Error::Overflow)?;
        Ok(Header {
            flags: if big_endian { FLAG_BIG_ENDIAN } else { 0 },
            type_code,
            elbyte,
            data_length,
            dims: dims.to_vec(),
        })
    }

    pub fn flags(&self) -> u64 {
        self.flags
    }

    pub fn is_big_endian(&self) -> bool {
        self.flags & FLAG_BIG_ENDIAN != 0
    }

    /// Same header with the data byte-order flag replaced.
    pub fn with_big_endian(mut self, big_endian: bool) -> Self {
        self.flags = if big_endian { self.flags | FLAG_BIG_ENDIAN } else { self.flags & !FLAG_BIG_ENDIAN };
        self
    }

    pub fn type_code(&self) -> TypeCode {
        self.type_code
    }

    pub fn eltype(&self) -> u64 {
        self.type_code.code()
    }

    pub fn elbyte(&self) -> u64 {
        self.elbyte
    }

    pub fn data_length(&self) -> u64 {
        self.data_length
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn ndims(&self) -> usize {
        self.dims.len()
    }

    /// Number of elements, `product(dims)`. Cannot overflow for a valid header.
    pub fn element_count(&self) -> u64 {
        self.dims.iter().product()
    }

    /// Encoded header length, `48 + 8 * ndims`.
    pub fn encoded_len(&self) -> usize {
        header_len(self.dims.len())
    }

    /// True when both headers describe the same array apart from data byte order.
    pub fn same_layout(&self, other: &Header) -> bool {
        self.type_code == other.type_code
            && self.elbyte == other.elbyte
            && self.data_length == other.data_length
            && self.dims == other.dims
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.encoded_len());
        self.encode_into(&mut out);
        out
    }

    /// Appends the encoded header to `out`.
    pub fn encode_into(&self, out: &mut Vec<u8>) {
        let fixed = [
            MAGIC,
            self.flags,
            self.type_code.code(),
            self.elbyte,
            self.data_length,
            self.dims.len() as u64,
        ];
        for word in fixed.iter().chain(self.dims.iter()) {
            out.extend_from_slice(&word.to_le_bytes());
        }
    }

    /// Decodes and validates a header from the start of `buf`. Bytes beyond
    /// the header are ignored.
    pub fn decode(buf: &[u8]) -> Result<Self> {
        let total = decode_prefix(buf)?;
        if buf.len() < total {
            return Err(Error::Truncated { needed: total, available: buf.len() });
        }
        let flags = word(buf, 1);
        if flags & !KNOWN_FLAGS != 0 {
            return Err(Error::UnknownFlags(flags & !KNOWN_FLAGS));
        }
        let type_code = TypeCode::from_code(word(buf, 2))?;
        let elbyte = word(buf, 3);
        type_code.check_elbyte(elbyte)?;
        let data_length = word(buf, 4);
        let ndims = (total - FIXED_HEADER_LEN) / 8;
        let dims: Vec<u64> = (0..ndims).map(|k| word(buf, 6 + k)).collect();
        let expected = checked_data_length(elbyte, &dims);
        if expected != Some(data_length) {
            return Err(Error::SizeMismatch { expected, found: data_length });
        }
        Ok(Header { flags, type_code, elbyte, data_length, dims })
    }
}

fn word(buf: &[u8], index: usize) -> u64 {
    let start = index * 8;
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&buf[start..start + 8]);
    u64::from_le_bytes(bytes)
}

/// Checks the magic and ndims in the fixed 48-byte prefix and returns the
/// full header length. Lets stream readers fetch the dims in a second read.
pub fn decode_prefix(buf: &[u8]) -> Result<usize> {
    if buf.len() >= 8 && buf[..8] != MAGIC_BYTES {
        return Err(Error::BadMagic);
    }
    if buf.len() < FIXED_HEADER_LEN {
        // A short buffer that is not even a prefix of the magic is not ours.
        let n = buf.len().min(8);
        if buf[..n] != MAGIC_BYTES[..n] {
            return Err(Error::BadMagic);
        }
        return Err(Error::Truncated { needed: FIXED_HEADER_LEN, available: buf.len() });
    }
    let ndims = word(buf, 5);
    if ndims > MAX_NDIMS {
        return Err(Error::DimsTooLarge(ndims));
    }
    Ok(header_len(ndims as usize))
}
