//! Typed element sequences and their byte encodings.

use alloc::vec::Vec;
use core::mem;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::float::{F128, F16};
use crate::kind::ElementKind;

/// A homogeneous, typed sequence of decoded elements.
///
/// Equality is bitwise on floats: NaN payloads compare by bits and
/// `0.0 != -0.0`. That is the identity an archival round trip must keep.
#[derive(Debug, Clone)]
pub enum Elements {
    I8(Vec<i8>),
    I16(Vec<i16>),
    I32(Vec<i32>),
    I64(Vec<i64>),
    U8(Vec<u8>),
    U16(Vec<u16>),
    U32(Vec<u32>),
    U64(Vec<u64>),
    F16(Vec<F16>),
    F32(Vec<f32>),
    F64(Vec<f64>),
    F128(Vec<F128>),
    C16(Vec<Complex<F16>>),
    C32(Vec<Complex<f32>>),
    C64(Vec<Complex<f64>>),
    /// Raw chunks of `stride` bytes: user structs and integers wider than
    /// 8 bytes. Integer chunks are held in little-endian order.
    Opaque { stride: usize, bytes: Vec<u8> },
}

/// One element widened for display. Quad floats are rounded to `f64` here;
/// use [`Elements::F128`] for the exact bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value<'a> {
    Int(i64),
    UInt(u64),
    Float(f64),
    Complex(f64, f64),
    Bytes(&'a [u8]),
}

/// Fixed-width scalars with a defined little/big-endian byte form.
trait Scalar: Copy {
    const SIZE: usize;
    fn read(bytes: &[u8], big_endian: bool) -> Self;
    fn write(self, out: &mut Vec<u8>, big_endian: bool);
}

macro_rules! scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const SIZE: usize = mem::size_of::<$t>();
            #[inline]
            fn read(bytes: &[u8], big_endian: bool) -> Self {
                let arr = bytes.try_into().expect("chunk size");
                if big_endian { <$t>::from_be_bytes(arr) } else { <$t>::from_le_bytes(arr) }
            }
            #[inline]
            fn write(self, out: &mut Vec<u8>, big_endian: bool) {
                if big_endian {
                    out.extend_from_slice(&self.to_be_bytes())
                } else {
                    out.extend_from_slice(&self.to_le_bytes())
                }
            }
        }
    )*};
}
scalar!(i8, i16, i32, i64, u8, u16, u32, u64, f32, f64);

impl Scalar for F16 {
    const SIZE: usize = 2;
    fn read(bytes: &[u8], big_endian: bool) -> Self {
        F16(u16::read(bytes, big_endian))
    }
    fn write(self, out: &mut Vec<u8>, big_endian: bool) {
        self.0.write(out, big_endian)
    }
}

impl Scalar for F128 {
    const SIZE: usize = 16;
    fn read(bytes: &[u8], big_endian: bool) -> Self {
        let arr = bytes.try_into().expect("chunk size");
        F128(if big_endian { u128::from_be_bytes(arr) } else { u128::from_le_bytes(arr) })
    }
    fn write(self, out: &mut Vec<u8>, big_endian: bool) {
        if big_endian {
            out.extend_from_slice(&self.0.to_be_bytes())
        } else {
            out.extend_from_slice(&self.0.to_le_bytes())
        }
    }
}

impl<T: Scalar> Scalar for Complex<T> {
    const SIZE: usize = 2 * T::SIZE;
    fn read(bytes: &[u8], big_endian: bool) -> Self {
        let (re, im) = bytes.split_at(T::SIZE);
        Complex::new(T::read(re, big_endian), T::read(im, big_endian))
    }
    fn write(self, out: &mut Vec<u8>, big_endian: bool) {
        self.re.write(out, big_endian);
        self.im.write(out, big_endian);
    }
}

fn read_all<T: Scalar>(raw: &[u8], big_endian: bool) -> Vec<T> {
    raw.chunks_exact(T::SIZE).map(|c| T::read(c, big_endian)).collect()
}

fn write_all<T: Scalar>(values: &[T], big_endian: bool) -> Vec<u8> {
    let mut out = Vec::with_capacity(values.len() * T::SIZE);
    for &v in values {
        v.write(&mut out, big_endian);
    }
    out
}

/// Reverses every `width`-byte unit in place.
pub fn swap_units(raw: &mut [u8], width: usize) {
    if width > 1 {
        for unit in raw.chunks_exact_mut(width) {
            unit.reverse();
        }
    }
}

/// Rewrites a data segment stored with `big_endian` order into
/// little-endian order. User-struct bytes are left untouched.
pub fn normalize_to_little_endian(raw: &mut [u8], kind: ElementKind, big_endian: bool) {
    if big_endian {
        if let Some(w) = kind.swap_width() {
            swap_units(raw, w);
        }
    }
}

fn check_aligned(raw: &[u8], kind: ElementKind) -> Result<()> {
    let stride = kind.stride();
    if raw.len() % stride != 0 {
        return Err(Error::MisalignedLength { len: raw.len(), stride });
    }
    Ok(())
}

/// Decodes a data segment into typed elements.
pub fn decode_elements(raw: &[u8], kind: ElementKind, big_endian: bool) -> Result<Elements> {
    check_aligned(raw, kind)?;
    let be = big_endian;
    Ok(match kind {
        ElementKind::Int(1) => Elements::I8(read_all(raw, be)),
        ElementKind::Int(2) => Elements::I16(read_all(raw, be)),
        ElementKind::Int(4) => Elements::I32(read_all(raw, be)),
        ElementKind::Int(8) => Elements::I64(read_all(raw, be)),
        ElementKind::UInt(1) => Elements::U8(raw.to_vec()),
        ElementKind::UInt(2) => Elements::U16(read_all(raw, be)),
        ElementKind::UInt(4) => Elements::U32(read_all(raw, be)),
        ElementKind::UInt(8) => Elements::U64(read_all(raw, be)),
        ElementKind::Float(2) => Elements::F16(read_all(raw, be)),
        ElementKind::Float(4) => Elements::F32(read_all(raw, be)),
        ElementKind::Float(8) => Elements::F64(read_all(raw, be)),
        ElementKind::Float(16) => Elements::F128(read_all(raw, be)),
        ElementKind::Complex(2) => Elements::C16(read_all(raw, be)),
        ElementKind::Complex(4) => Elements::C32(read_all(raw, be)),
        ElementKind::Complex(8) => Elements::C64(read_all(raw, be)),
        ElementKind::Int(w) | ElementKind::UInt(w) => {
            let mut bytes = raw.to_vec();
            normalize_to_little_endian(&mut bytes, kind, be);
            Elements::Opaque { stride: w, bytes }
        }
        ElementKind::UserStruct(w) => Elements::Opaque { stride: w, bytes: raw.to_vec() },
        ElementKind::Float(_) | ElementKind::Complex(_) => {
            let elbyte = kind.stride() as u64;
            return Err(Error::UnsupportedWidth { eltype: kind.type_code().code(), elbyte });
        }
    })
}

/// Encodes elements as the data segment for `kind`.
///
/// Values of a different width are converted first (see [`Elements::cast`]).
pub fn encode_elements(values: &Elements, kind: ElementKind, big_endian: bool) -> Result<Vec<u8>> {
    let cast;
    let values = if values.matches_kind(kind) {
        values
    } else {
        cast = values.cast(kind)?;
        &cast
    };
    let be = big_endian;
    Ok(match values {
        Elements::I8(v) => write_all(v, be),
        Elements::I16(v) => write_all(v, be),
        Elements::I32(v) => write_all(v, be),
        Elements::I64(v) => write_all(v, be),
        Elements::U8(v) => v.clone(),
        Elements::U16(v) => write_all(v, be),
        Elements::U32(v) => write_all(v, be),
        Elements::U64(v) => write_all(v, be),
        Elements::F16(v) => write_all(v, be),
        Elements::F32(v) => write_all(v, be),
        Elements::F64(v) => write_all(v, be),
        Elements::F128(v) => write_all(v, be),
        Elements::C16(v) => write_all(v, be),
        Elements::C32(v) => write_all(v, be),
        Elements::C64(v) => write_all(v, be),
        Elements::Opaque { bytes, .. } => {
            let mut out = bytes.clone();
            // Integer chunks are held little-endian; structs are verbatim.
            normalize_to_little_endian(&mut out, kind, be);
            out
        }
    })
}

impl Elements {
    pub fn len(&self) -> usize {
        match self {
            Elements::I8(v) => v.len(),
            Elements::I16(v) => v.len(),
            Elements::I32(v) => v.len(),
            Elements::I64(v) => v.len(),
            Elements::U8(v) => v.len(),
            Elements::U16(v) => v.len(),
            Elements::U32(v) => v.len(),
            Elements::U64(v) => v.len(),
            Elements::F16(v) => v.len(),
            Elements::F32(v) => v.len(),
            Elements::F64(v) => v.len(),
            Elements::F128(v) => v.len(),
            Elements::C16(v) => v.len(),
            Elements::C32(v) => v.len(),
            Elements::C64(v) => v.len(),
            Elements::Opaque { stride, bytes } => bytes.len() / stride,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when the variant is the exact in-memory form for `kind`.
    pub fn matches_kind(&self, kind: ElementKind) -> bool {
        use ElementKind as K;
        match (self, kind) {
            (Elements::I8(_), K::Int(1))
            | (Elements::I16(_), K::Int(2))
            | (Elements::I32(_), K::Int(4))
            | (Elements::I64(_), K::Int(8))
            | (Elements::U8(_), K::UInt(1))
            | (Elements::U16(_), K::UInt(2))
            | (Elements::U32(_), K::UInt(4))
            | (Elements::U64(_), K::UInt(8))
            | (Elements::F16(_), K::Float(2))
            | (Elements::F32(_), K::Float(4))
            | (Elements::F64(_), K::Float(8))
            | (Elements::F128(_), K::Float(16))
            | (Elements::C16(_), K::Complex(2))
            | (Elements::C32(_), K::Complex(4))
            | (Elements::C64(_), K::Complex(8)) => true,
            (Elements::Opaque { stride, .. }, k) => !k.is_native() && *stride == k.stride(),
            _ => false,
        }
    }

    /// Element `i` widened for display.
    pub fn get(&self, i: usize) -> Option<Value<'_>> {
        Some(match self {
            Elements::I8(v) => Value::Int(*v.get(i)? as i64),
            Elements::I16(v) => Value::Int(*v.get(i)? as i64),
            Elements::I32(v) => Value::Int(*v.get(i)? as i64),
            Elements::I64(v) => Value::Int(*v.get(i)?),
            Elements::U8(v) => Value::UInt(*v.get(i)? as u64),
            Elements::U16(v) => Value::UInt(*v.get(i)? as u64),
            Elements::U32(v) => Value::UInt(*v.get(i)? as u64),
            Elements::U64(v) => Value::UInt(*v.get(i)?),
            Elements::F16(v) => Value::Float(v.get(i)?.to_f64()),
            Elements::F32(v) => Value::Float(*v.get(i)? as f64),
            Elements::F64(v) => Value::Float(*v.get(i)?),
            Elements::F128(v) => Value::Float(v.get(i)?.to_f64()),
            Elements::C16(v) => {
                let c = v.get(i)?;
                Value::Complex(c.re.to_f64(), c.im.to_f64())
            }
            Elements::C32(v) => {
                let c = v.get(i)?;
                Value::Complex(c.re as f64, c.im as f64)
            }
            Elements::C64(v) => {
                let c = v.get(i)?;
                Value::Complex(c.re, c.im)
            }
            Elements::Opaque { stride, bytes } => Value::Bytes(bytes.chunks_exact(*stride).nth(i)?),
        })
    }

    /// Converts to the exact in-memory form for `kind`.
    ///
    /// Integers convert when the value fits; floats round to nearest and
    /// fail if a finite value would become infinite; real values do not
    /// become complex and vice versa.
    pub fn cast(&self, kind: ElementKind) -> Result<Elements> {
        if self.matches_kind(kind) {
            return Ok(self.clone());
        }
        match kind {
            ElementKind::Int(_) | ElementKind::UInt(_) if kind.is_native() => self.cast_int(kind),
            ElementKind::Float(w) => {
                let src = self.real_floats().ok_or(Error::KindMismatch)?;
                float_target(&src, w)
            }
            ElementKind::Complex(w) => {
                let src = self.complex_floats().ok_or(Error::KindMismatch)?;
                let re: Vec<f64> = src.iter().map(|c| c.re).collect();
                let im: Vec<f64> = src.iter().map(|c| c.im).collect();
                let pair = |a: Elements, b: Elements| -> Elements {
                    match (a, b) {
                        (Elements::F16(a), Elements::F16(b)) => {
                            Elements::C16(a.into_iter().zip(b).map(|(r, i)| Complex::new(r, i)).collect())
                        }
                        (Elements::F32(a), Elements::F32(b)) => {
                            Elements::C32(a.into_iter().zip(b).map(|(r, i)| Complex::new(r, i)).collect())
                        }
                        (Elements::F64(a), Elements::F64(b)) => {
                            Elements::C64(a.into_iter().zip(b).map(|(r, i)| Complex::new(r, i)).collect())
                        }
                        _ => unreachable!("component widths match"),
                    }
                };
                let re = float_target(&re, w)?;
                let im = float_target(&im, w)?;
                Ok(pair(re, im))
            }
            _ => Err(Error::KindMismatch),
        }
    }

    fn cast_int(&self, kind: ElementKind) -> Result<Elements> {
        let wide: Vec<i128> = match self {
            Elements::I8(v) => v.iter().map(|&x| x as i128).collect(),
            Elements::I16(v) => v.iter().map(|&x| x as i128).collect(),
            Elements::I32(v) => v.iter().map(|&x| x as i128).collect(),
            Elements::I64(v) => v.iter().map(|&x| x as i128).collect(),
            Elements::U8(v) => v.iter().map(|&x| x as i128).collect(),
            Elements::U16(v) => v.iter().map(|&x| x as i128).collect(),
            Elements::U32(v) => v.iter().map(|&x| x as i128).collect(),
            Elements::U64(v) => v.iter().map(|&x| x as i128).collect(),
            _ => return Err(Error::KindMismatch),
        };
        fn narrow<T: TryFrom<i128>>(wide: &[i128]) -> Result<Vec<T>> {
            wide.iter()
                .enumerate()
                .map(|(index, &x)| T::try_from(x).map_err(|_| Error::UnrepresentableValue { index }))
                .collect()
        }
        Ok(match kind {
            ElementKind::Int(1) => Elements::I8(narrow(&wide)?),
            ElementKind::Int(2) => Elements::I16(narrow(&wide)?),
            ElementKind::Int(4) => Elements::I32(narrow(&wide)?),
            ElementKind::Int(8) => Elements::I64(narrow(&wide)?),
            ElementKind::UInt(1) => Elements::U8(narrow(&wide)?),
            ElementKind::UInt(2) => Elements::U16(narrow(&wide)?),
            ElementKind::UInt(4) => Elements::U32(narrow(&wide)?),
            ElementKind::UInt(8) => Elements::U64(narrow(&wide)?),
            _ => return Err(Error::KindMismatch),
        })
    }

    fn real_floats(&self) -> Option<Vec<f64>> {
        Some(match self {
            Elements::F16(v) => v.iter().map(|x| x.to_f64()).collect(),
            Elements::F32(v) => v.iter().map(|&x| x as f64).collect(),
            Elements::F64(v) => v.clone(),
            Elements::F128(v) => v.iter().map(|x| x.to_f64()).collect(),
            _ => return None,
        })
    }

    fn complex_floats(&self) -> Option<Vec<Complex<f64>>> {
        Some(match self {
            Elements::C16(v) => v.iter().map(|c| Complex::new(c.re.to_f64(), c.im.to_f64())).collect(),
            Elements::C32(v) => v.iter().map(|c| Complex::new(c.re as f64, c.im as f64)).collect(),
            Elements::C64(v) => v.clone(),
            _ => return None,
        })
    }

    fn tag_and_le_bytes(&self) -> (mem::Discriminant<Elements>, usize, Vec<u8>) {
        let stride = match self {
            Elements::Opaque { stride, .. } => *stride,
            _ => 0,
        };
        let bytes = match self {
            Elements::I8(v) => write_all(v, false),
            Elements::I16(v) => write_all(v, false),
            Elements::I32(v) => write_all(v, false),
            Elements::I64(v) => write_all(v, false),
            Elements::U8(v) => v.clone(),
            Elements::U16(v) => write_all(v, false),
            Elements::U32(v) => write_all(v, false),
            Elements::U64(v) => write_all(v, false),
            Elements::F16(v) => write_all(v, false),
            Elements::F32(v) => write_all(v, false),
            Elements::F64(v) => write_all(v, false),
            Elements::F128(v) => write_all(v, false),
            Elements::C16(v) => write_all(v, false),
            Elements::C32(v) => write_all(v, false),
            Elements::C64(v) => write_all(v, false),
            Elements::Opaque { bytes, .. } => bytes.clone(),
        };
        (mem::discriminant(self), stride, bytes)
    }
}

fn float_target(src: &[f64], width: usize) -> Result<Elements> {
    let overflow = |index| Error::UnrepresentableValue { index };
    Ok(match width {
        2 => Elements::F16(
            src.iter()
                .enumerate()
                .map(|(i, &x)| F16::from_f64_strict(x).ok_or(overflow(i)))
                .collect::<Result<_>>()?,
        ),
        4 => Elements::F32(
            src.iter()
                .enumerate()
                .map(|(i, &x)| {
                    let y = x as f32;
                    if y.is_infinite() && x.is_finite() {
                        Err(overflow(i))
                    } else {
                        Ok(y)
                    }
                })
                .collect::<Result<_>>()?,
        ),
        8 => Elements::F64(src.to_vec()),
        16 => Elements::F128(src.iter().map(|&x| F128::from_f64(x)).collect()),
        _ => return Err(Error::KindMismatch),
    })
}

impl PartialEq for Elements {
    fn eq(&self, other: &Self) -> bool {
        self.tag_and_le_bytes() == other.tag_and_le_bytes()
    }
}

impl Eq for Elements {}

/// Rust types with a fixed element kind, for typed construction and access.
pub trait NativeElement: Copy + Sized {
    const KIND: ElementKind;
    fn wrap(values: Vec<Self>) -> Elements;
    fn unwrap(elements: Elements) -> Option<Vec<Self>>;
}

macro_rules! native {
    ($($t:ty => $variant:ident, $kind:expr;)*) => {$(
        impl NativeElement for $t {
            const KIND: ElementKind = $kind;
            fn wrap(values: Vec<Self>) -> Elements {
                Elements::$variant(values)
            }
            fn unwrap(elements: Elements) -> Option<Vec<Self>> {
                match elements {
                    Elements::$variant(v) => Some(v),
                    _ => None,
                }
            }
        }
        impl From<Vec<$t>> for Elements {
            fn from(values: Vec<$t>) -> Self {
                Elements::$variant(values)
            }
        }
    )*};
}

native! {
    i8 => I8, ElementKind::Int(1);
    i16 => I16, ElementKind::Int(2);
    i32 => I32, ElementKind::Int(4);
    i64 => I64, ElementKind::Int(8);
    u8 => U8, ElementKind::UInt(1);
    u16 => U16, ElementKind::UInt(2);
    u32 => U32, ElementKind::UInt(4);
    u64 => U64, ElementKind::UInt(8);
    F16 => F16, ElementKind::Float(2);
    f32 => F32, ElementKind::Float(4);
    f64 => F64, ElementKind::Float(8);
    F128 => F128, ElementKind::Float(16);
    Complex<F16> => C16, ElementKind::Complex(2);
    Complex<f32> => C32, ElementKind::Complex(4);
    Complex<f64> => C64, ElementKind::Complex(8);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn decode_examples() {
        assert_eq!(
            decode_elements(&[1, 0, 0, 0], ElementKind::Int(4), false).unwrap(),
            Elements::I32(vec![1])
        );
        assert_eq!(
            decode_elements(&[0x3f, 0x80, 0, 0], ElementKind::Float(4), true).unwrap(),
            Elements::F32(vec![1.0])
        );
        // 0.0 followed by -inf, single precision, little-endian.
        let raw = [0, 0, 0, 0, 0, 0, 0x80, 0xff];
        match decode_elements(&raw, ElementKind::Complex(4), false).unwrap() {
            Elements::C32(v) => {
                assert_eq!(v[0].re, 0.0);
                assert_eq!(v[0].im, f32::NEG_INFINITY);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn encode_examples() {
        let bytes = encode_elements(&Elements::F32(vec![1.0, 2.0]), ElementKind::Float(4), false).unwrap();
        assert_eq!(bytes.len(), 8);
        assert_eq!(decode_elements(&bytes, ElementKind::Float(4), false).unwrap(), Elements::F32(vec![1.0, 2.0]));

        let c = Elements::C32(vec![Complex::new(0.0, f32::NEG_INFINITY)]);
        assert_eq!(encode_elements(&c, ElementKind::Complex(4), false).unwrap(), vec![0, 0, 0, 0, 0, 0, 0x80, 0xff]);
    }

    #[test]
    fn half_overflow_is_strict() {
        assert_eq!(
            encode_elements(&Elements::F64(vec![1.0, 65536.0]), ElementKind::Float(2), false),
            Err(Error::UnrepresentableValue { index: 1 })
        );
        assert!(encode_elements(&Elements::F64(vec![65504.0]), ElementKind::Float(2), false).is_ok());
    }

    #[test]
    fn misaligned() {
        assert_eq!(
            decode_elements(&[0; 7], ElementKind::Float(4), false),
            Err(Error::MisalignedLength { len: 7, stride: 4 })
        );
    }

    #[test]
    fn int_casts() {
        assert_eq!(Elements::I64(vec![-1, 300]).cast(ElementKind::Int(2)), Ok(Elements::I16(vec![-1, 300])));
        assert_eq!(
            Elements::I64(vec![0, -1]).cast(ElementKind::UInt(4)),
            Err(Error::UnrepresentableValue { index: 1 })
        );
        assert_eq!(Elements::F32(vec![1.0]).cast(ElementKind::Int(4)), Err(Error::KindMismatch));
        assert_eq!(Elements::F64(vec![1.0]).cast(ElementKind::Complex(4)), Err(Error::KindMismatch));
    }

    #[test]
    fn float_cast_overflow() {
        assert_eq!(
            Elements::F64(vec![1e300]).cast(ElementKind::Float(4)),
            Err(Error::UnrepresentableValue { index: 0 })
        );
        assert!(Elements::F64(vec![f64::INFINITY]).cast(ElementKind::Float(4)).is_ok());
    }

    #[test]
    fn wide_ints_are_opaque_little_endian() {
        let raw: Vec<u8> = (0..32).collect();
        let le = decode_elements(&raw, ElementKind::Int(16), false).unwrap();
        let be = decode_elements(&raw, ElementKind::Int(16), true).unwrap();
        let Elements::Opaque { bytes, stride } = &be else { panic!() };
        assert_eq!(*stride, 16);
        assert_eq!(bytes[0], 15);
        assert_ne!(le, be);
        assert_eq!(encode_elements(&be, ElementKind::Int(16), true).unwrap(), raw);
    }

    #[test]
    fn structs_are_verbatim() {
        let raw = [1u8, 2, 3, 4, 5, 6];
        let e = decode_elements(&raw, ElementKind::UserStruct(3), true).unwrap();
        assert_eq!(e.get(1), Some(Value::Bytes(&[4, 5, 6])));
        assert_eq!(encode_elements(&e, ElementKind::UserStruct(3), true).unwrap(), raw);
    }

    #[test]
    fn nan_equality_is_bitwise() {
        let a = Elements::F32(vec![f32::from_bits(0x7fc0_0001)]);
        let b = Elements::F32(vec![f32::from_bits(0x7fc0_0001)]);
        let c = Elements::F32(vec![f32::from_bits(0x7fc0_0002)]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(Elements::F64(vec![0.0]), Elements::F64(vec![-0.0]));
    }
}
