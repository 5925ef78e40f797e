use core::fmt;

use crate::error::{Error, Result};
use crate::header::{Header, TypeCode};

/// Concrete interpretation of one element, resolved from `(eltype, elbyte)`.
///
/// Integer kinds with a width outside {1, 2, 4, 8} (wide SIMD lanes, 128-bit
/// integers) are kept as exact byte chunks rather than rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    UserStruct(usize),
    Int(usize),
    UInt(usize),
    Float(usize),
    /// Width of one component; an element is two of these (re, im).
    Complex(usize),
}

pub fn resolve_kind(eltype: u64, elbyte: u64) -> Result<ElementKind> {
    ElementKind::resolve(TypeCode::from_code(eltype)?, elbyte)
}

impl ElementKind {
    pub fn resolve(code: TypeCode, elbyte: u64) -> Result<Self> {
        let unsupported = Error::UnsupportedWidth { eltype: code.code(), elbyte };
        let width = usize::try_from(elbyte).map_err(|_| unsupported.clone())?;
        let kind = match (code, width) {
            (_, 0) => return Err(unsupported),
            (TypeCode::UserStruct, w) => ElementKind::UserStruct(w),
            (TypeCode::Int, w) => ElementKind::Int(w),
            (TypeCode::UInt, w) => ElementKind::UInt(w),
            (TypeCode::Float, w @ (2 | 4 | 8 | 16)) => ElementKind::Float(w),
            (TypeCode::Complex, w @ (4 | 8 | 16)) => ElementKind::Complex(w / 2),
            _ => return Err(unsupported),
        };
        Ok(kind)
    }

    pub fn of_header(header: &Header) -> Result<Self> {
        Self::resolve(header.type_code(), header.elbyte())
    }

    pub fn type_code(self) -> TypeCode {
        match self {
            ElementKind::UserStruct(_) => TypeCode::UserStruct,
            ElementKind::Int(_) => TypeCode::Int,
            ElementKind::UInt(_) => TypeCode::UInt,
            ElementKind::Float(_) => TypeCode::Float,
            ElementKind::Complex(_) => TypeCode::Complex,
        }
    }

    /// Bytes per element on disk.
    pub fn stride(self) -> usize {
        match self {
            ElementKind::Complex(w) => 2 * w,
            ElementKind::UserStruct(w)
            | ElementKind::Int(w)
            | ElementKind::UInt(w)
            | ElementKind::Float(w) => w,
        }
    }

    /// Unit the data byte-order flag applies to, or `None` for opaque structs.
    pub fn swap_width(self) -> Option<usize> {
        match self {
            ElementKind::UserStruct(_) => None,
            ElementKind::Complex(w) | ElementKind::Int(w) | ElementKind::UInt(w) | ElementKind::Float(w) => {
                Some(w)
            }
        }
    }

    /// True when elements decode to native numbers rather than byte chunks.
    pub fn is_native(self) -> bool {
        match self {
            ElementKind::UserStruct(_) => false,
            ElementKind::Int(w) | ElementKind::UInt(w) => matches!(w, 1 | 2 | 4 | 8),
            ElementKind::Float(_) | ElementKind::Complex(_) => true,
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElementKind::UserStruct(w) => write!(f, "struct[{w}]"),
            ElementKind::Int(w) => write!(f, "int{}", w * 8),
            ElementKind::UInt(w) => write!(f, "uint{}", w * 8),
            ElementKind::Float(w) => write!(f, "float{}", w * 8),
            ElementKind::Complex(w) => write!(f, "complex{}", w * 16),
        }
    }
}
