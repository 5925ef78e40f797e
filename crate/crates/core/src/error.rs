use thiserror::Error;

/// Classified failures of the pure codec layer.
///
/// Every malformed input maps onto exactly one of these variants; the decoder
/// never panics on arbitrary bytes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad magic number")]
    BadMagic,

    #[error("truncated header")]
    Truncated { needed: usize, available: usize },

    #[error("unknown flag bits {0:#x}")]
    UnknownFlags(u64),

    #[error("reserved type code {0}")]
    ReservedType(u64),

    #[error("invalid element size {elbyte} for type code {eltype}")]
    InvalidType { eltype: u64, elbyte: u64 },

    #[error("data length {found} does not match element size times dims ({})", match expected {
        Some(n) => alloc::format!("{n}"),
        None => alloc::string::String::from("overflows u64"),
    })]
    SizeMismatch { expected: Option<u64>, found: u64 },

    #[error("ndims {0} exceeds the limit of {max}", max = crate::MAX_NDIMS)]
    DimsTooLarge(u64),

    #[error("element size times dims overflows 64 bits")]
    Overflow,

    #[error("unsupported element width {elbyte} for type code {eltype}")]
    UnsupportedWidth { eltype: u64, elbyte: u64 },

    #[error("data length {len} is not a multiple of the element stride {stride}")]
    MisalignedLength { len: usize, stride: usize },

    #[error("value at position {index} is not representable in the target element kind")]
    UnrepresentableValue { index: usize },

    #[error("element values do not match the target element kind")]
    KindMismatch,

    #[error("index out of bounds")]
    OutOfBounds,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
