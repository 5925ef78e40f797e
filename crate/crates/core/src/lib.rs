//! Codec for the RawArray archival format.
//!
//! A RawArray file is a header of little-endian 64-bit words followed by the
//! raw array data and, optionally, arbitrary trailing metadata bytes. This
//! crate holds the pure parts: header encoding and validation, element kind
//! resolution, byte-order handling and index linearization. It needs only
//! `alloc`; file IO lives in the `rawarray` crate.
//!
//! ```
//! use rawarray_core::{make_header, Header};
//!
//! let header = make_header(4, 8, &[3, 4], false).unwrap();
//! let bytes = header.encode();
//! assert_eq!(&bytes[..8], b"rawarray");
//! assert_eq!(Header::decode(&bytes).unwrap(), header);
//! ```

#![no_std]

extern crate alloc;

pub mod elements;
pub mod error;
pub mod float;
pub mod header;
pub mod index;
pub mod kind;

pub use elements::{
    decode_elements, encode_elements, normalize_to_little_endian, swap_units, Elements, NativeElement, Value,
};
pub use error::{Error, Result};
pub use float::{F128, F16};
pub use header::{
    decode_prefix, header_len, make_header, Header, TypeCode, FIXED_HEADER_LEN, FLAG_BIG_ENDIAN, MAGIC,
    MAGIC_BYTES, MAX_NDIMS,
};
pub use index::{linear_index, unravel_index};
pub use kind::{resolve_kind, ElementKind};
pub use num_complex::Complex;
