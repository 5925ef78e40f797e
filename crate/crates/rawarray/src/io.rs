//! Reading and writing whole RawArray files.
//!
//! Files are written atomically (temp file in the target directory, then
//! rename) and always little-endian unless the array was built big-endian.
//! Readers accept either byte order; typed access goes through the header's
//! flag. Memory-mapped views are read-only.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use memmap2::Mmap;
use rawarray_core::{
    decode_elements, decode_prefix, encode_elements, normalize_to_little_endian, ElementKind, Elements, Header,
    NativeElement, FIXED_HEADER_LEN,
};
use tempfile::NamedTempFile;

use crate::error::{Error, Result};

/// Default cap on `data_length` for reads into memory: 16 GiB.
pub const DEFAULT_READ_LIMIT: u64 = 16 << 30;

/// Setting this environment variable to `0` disables memory mapping.
pub const MMAP_ENV: &str = "RA_MMAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReadOptions {
    /// Largest data segment [`read_array`] will buffer.
    pub max_data_len: u64,
}

impl Default for ReadOptions {
    fn default() -> Self {
        ReadOptions { max_data_len: DEFAULT_READ_LIMIT }
    }
}

/// A header, its data bytes and any trailing metadata: the in-memory mirror
/// of one file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaArray {
    header: Header,
    data: Vec<u8>,
    metadata: Vec<u8>,
}

impl RaArray {
    pub fn new(header: Header, data: Vec<u8>) -> Result<Self> {
        if data.len() as u64 != header.data_length() {
            return Err(Error::InvariantViolation(format!(
                "data is {} bytes but the header declares {}",
                data.len(),
                header.data_length()
            )));
        }
        Ok(RaArray { header, data, metadata: Vec::new() })
    }

    pub fn with_metadata(mut self, metadata: Vec<u8>) -> Self {
        self.metadata = metadata;
        self
    }

    /// Builds an array of shape `dims` from typed values, converting them to
    /// `kind` if needed.
    pub fn from_elements(values: &Elements, kind: ElementKind, dims: &[u64], big_endian: bool) -> Result<Self> {
        let header = Header::new(kind.type_code(), kind.stride() as u64, dims, big_endian)?;
        if values.len() as u64 != header.element_count() {
            return Err(Error::CountMismatch {
                expected: header.element_count(),
                found: values.len() as u64,
                unit: "elements",
            });
        }
        let data = encode_elements(values, kind, big_endian)?;
        RaArray::new(header, data)
    }

    /// Little-endian array of shape `dims` from a vector of native values.
    pub fn from_vec<T: NativeElement>(values: Vec<T>, dims: &[u64]) -> Result<Self> {
        RaArray::from_elements(&T::wrap(values), T::KIND, dims, false)
    }

    pub fn header(&self) -> &Header {
        &self.header
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn metadata(&self) -> &[u8] {
        &self.metadata
    }

    pub fn into_parts(self) -> (Header, Vec<u8>, Vec<u8>) {
        (self.header, self.data, self.metadata)
    }

    pub fn kind(&self) -> Result<ElementKind> {
        Ok(ElementKind::of_header(&self.header)?)
    }

    pub fn elements(&self) -> Result<Elements> {
        Ok(decode_elements(&self.data, self.kind()?, self.header.is_big_endian())?)
    }

    /// Typed copy of the data. Fails unless the stored kind is exactly `T`.
    pub fn to_vec<T: NativeElement>(&self) -> Result<Vec<T>> {
        if self.kind()? != T::KIND {
            return Err(rawarray_core::Error::KindMismatch.into());
        }
        Ok(T::unwrap(self.elements()?).expect("kind checked"))
    }

    /// Serialized size: header, data and metadata.
    pub fn file_len(&self) -> u64 {
        self.header.encoded_len() as u64 + self.header.data_length() + self.metadata.len() as u64
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.file_len() as usize);
        self.header.encode_into(&mut out);
        out.extend_from_slice(&self.data);
        out.extend_from_slice(&self.metadata);
        out
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        read_array(path)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        write_array(path, self)
    }
}

/// One-dimensional little-endian array.
impl<T: NativeElement> From<Vec<T>> for RaArray {
    fn from(values: Vec<T>) -> Self {
        let n = values.len() as u64;
        RaArray::from_vec(values, &[n]).expect("a 1-D native vector always fits its header")
    }
}

macro_rules! into_vec {
    ($($t:ty),*) => {$(
        impl TryFrom<RaArray> for Vec<$t> {
            type Error = Error;
            fn try_from(arr: RaArray) -> Result<Self> {
                arr.to_vec()
            }
        }
    )*};
}
into_vec!(i8, i16, i32, i64, u8, u16, u32, u64, f32, f64);

/// Writes `arr` to any byte sink: header, data, metadata.
pub fn write_array_to<W: Write>(mut dest: W, arr: &RaArray) -> Result<()> {
    dest.write_all(&arr.header.encode())?;
    dest.write_all(&arr.data)?;
    dest.write_all(&arr.metadata)?;
    dest.flush()?;
    Ok(())
}

/// Writes `arr` to `path` atomically.
pub fn write_array(path: impl AsRef<Path>, arr: &RaArray) -> Result<()> {
    write_atomic(path.as_ref(), |file| write_array_to(BufWriter::new(file), arr), || Ok(()))
}

/// Writes through a temp file in the destination directory and renames it
/// over `path`. `before_rename` runs after the content is complete; an error
/// from it (or from `fill`) leaves any existing file at `path` untouched.
fn write_atomic(
    path: &Path,
    fill: impl FnOnce(&mut File) -> Result<()>,
    before_rename: impl FnOnce() -> io::Result<()>,
) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    fill(tmp.as_file_mut())?;
    before_rename()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Reads exactly as many bytes as are available up to `buf.len()`.
fn read_full<R: Read>(src: &mut R, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match src.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

/// Reads and validates just the header from the front of `src`.
pub fn read_header_from<R: Read>(src: &mut R) -> Result<Header> {
    let mut buf = vec![0u8; FIXED_HEADER_LEN];
    let n = read_full(src, &mut buf)?;
    buf.truncate(n);
    let total = decode_prefix(&buf)?;
    buf.resize(total, 0);
    let n = read_full(src, &mut buf[FIXED_HEADER_LEN..])?;
    buf.truncate(FIXED_HEADER_LEN + n);
    Ok(Header::decode(&buf)?)
}

fn check_limit(header: &Header, opts: &ReadOptions) -> Result<()> {
    if header.data_length() > opts.max_data_len {
        return Err(Error::ExplicitlyTooLarge { len: header.data_length(), limit: opts.max_data_len });
    }
    Ok(())
}

/// Reads a whole array from a stream. Metadata is everything up to EOF.
pub fn read_array_from<R: Read>(mut src: R, opts: &ReadOptions) -> Result<RaArray> {
    let header = read_header_from(&mut src)?;
    check_limit(&header, opts)?;
    let expected = header.data_length();
    // Grow as bytes arrive so a lying header cannot force a huge allocation.
    let mut data = Vec::with_capacity(expected.min(1 << 24) as usize);
    (&mut src).take(expected).read_to_end(&mut data)?;
    if (data.len() as u64) < expected {
        return Err(Error::TruncatedData { expected, available: data.len() as u64 });
    }
    let mut metadata = Vec::new();
    src.read_to_end(&mut metadata)?;
    Ok(RaArray { header, data, metadata })
}

// Files up to this size are read with a single call.
const SMALL_FILE: u64 = 1 << 20;

/// Parses a complete in-memory file image.
pub fn array_from_bytes(mut bytes: Vec<u8>, opts: &ReadOptions) -> Result<RaArray> {
    let header = Header::decode(&bytes)?;
    check_limit(&header, opts)?;
    let header_len = header.encoded_len();
    let available = (bytes.len() - header_len) as u64;
    if available < header.data_length() {
        return Err(Error::TruncatedData { expected: header.data_length(), available });
    }
    let data_end = header_len + header.data_length() as usize;
    let metadata = bytes.split_off(data_end);
    bytes.drain(..header_len);
    Ok(RaArray { header, data: bytes, metadata })
}

/// Reads a whole array from a file.
pub fn read_array(path: impl AsRef<Path>) -> Result<RaArray> {
    read_array_with(path, &ReadOptions::default())
}

pub fn read_array_with(path: impl AsRef<Path>, opts: &ReadOptions) -> Result<RaArray> {
    let mut file = File::open(path)?;
    let file_len = file.metadata()?.len();
    if file_len <= SMALL_FILE {
        let mut bytes = vec![0u8; file_len as usize];
        file.read_exact(&mut bytes)?;
        return array_from_bytes(bytes, opts);
    }
    let header = read_header_from(&mut file)?;
    check_limit(&header, opts)?;
    let header_len = header.encoded_len() as u64;
    let available = file_len.saturating_sub(header_len);
    if available < header.data_length() {
        return Err(Error::TruncatedData { expected: header.data_length(), available });
    }
    let mut data = vec![0u8; header.data_length() as usize];
    file.read_exact(&mut data)?;
    let mut metadata = Vec::with_capacity((available - header.data_length()) as usize);
    file.read_to_end(&mut metadata)?;
    Ok(RaArray { header, data, metadata })
}

/// Reads only the `48 + 8 * ndims` header bytes.
pub fn read_header_only(path: impl AsRef<Path>) -> Result<Header> {
    let mut file = File::open(path)?;
    read_header_from(&mut file)
}

/// Header plus the byte length of the trailing metadata, checking that the
/// data segment is present.
pub fn read_header_and_metadata_len(path: impl AsRef<Path>) -> Result<(Header, u64)> {
    let mut file = File::open(path)?;
    let file_len = file.metadata()?.len();
    let header = read_header_from(&mut file)?;
    let available = file_len.saturating_sub(header.encoded_len() as u64);
    if available < header.data_length() {
        return Err(Error::TruncatedData { expected: header.data_length(), available });
    }
    let metadata_len = available - header.data_length();
    Ok((header, metadata_len))
}

/// A zero-copy, read-only window over a memory-mapped file's data segment.
#[derive(Debug)]
pub struct ArrayView {
    header: Header,
    map: Mmap,
}

impl ArrayView {
    pub fn header(&self) -> &Header {
        &self.header
    }

    /// The data segment, borrowed straight from the mapping.
    pub fn data(&self) -> &[u8] {
        let start = self.header.encoded_len();
        &self.map[start..start + self.header.data_length() as usize]
    }

    pub fn metadata(&self) -> &[u8] {
        &self.map[self.header.encoded_len() + self.header.data_length() as usize..]
    }

    /// The whole mapped file.
    pub fn file_bytes(&self) -> &[u8] {
        &self.map
    }

    pub fn kind(&self) -> Result<ElementKind> {
        Ok(ElementKind::of_header(&self.header)?)
    }

    pub fn elements(&self) -> Result<Elements> {
        Ok(decode_elements(self.data(), self.kind()?, self.header.is_big_endian())?)
    }

    pub fn to_array(&self) -> RaArray {
        RaArray { header: self.header.clone(), data: self.data().to_vec(), metadata: self.metadata().to_vec() }
    }
}

fn mmap_disabled(setting: Option<&str>) -> bool {
    matches!(setting.map(str::trim), Some("0"))
}

/// Whether `RA_MMAP` currently allows mapping.
pub fn mmap_enabled() -> bool {
    !mmap_disabled(std::env::var(MMAP_ENV).ok().as_deref())
}

/// Maps `path` read-only. The header is validated and the file length
/// checked before any view is handed out.
pub fn map_array(path: impl AsRef<Path>) -> Result<ArrayView> {
    if !mmap_enabled() {
        return Err(Error::MappingUnsupported(format!("disabled by {MMAP_ENV}=0")));
    }
    let mut file = File::open(path)?;
    let file_len = file.metadata()?.len();
    let header = read_header_from(&mut file)?;
    let available = file_len.saturating_sub(header.encoded_len() as u64);
    if available < header.data_length() {
        return Err(Error::TruncatedData { expected: header.data_length(), available });
    }
    if usize::try_from(file_len).is_err() {
        return Err(Error::MappingUnsupported("file exceeds the address space".into()));
    }
    // SAFETY: the mapping is read-only. Files are replaced by rename, never
    // rewritten in place, so the mapped inode does not change under us.
    let map = unsafe { Mmap::map(&file) }.map_err(|e| Error::MappingUnsupported(e.to_string()))?;
    if (map.len() as u64) < header.encoded_len() as u64 + header.data_length() {
        // Shrunk between the length check and the mapping.
        return Err(Error::TruncatedData { expected: header.data_length(), available: map.len() as u64 });
    }
    Ok(ArrayView { header, map })
}

/// An opened array, mapped when possible and read into memory otherwise.
#[derive(Debug)]
pub enum Loaded {
    Mapped(ArrayView),
    Read(RaArray),
}

impl Loaded {
    pub fn header(&self) -> &Header {
        match self {
            Loaded::Mapped(v) => v.header(),
            Loaded::Read(a) => a.header(),
        }
    }

    pub fn data(&self) -> &[u8] {
        match self {
            Loaded::Mapped(v) => v.data(),
            Loaded::Read(a) => a.data(),
        }
    }

    pub fn metadata(&self) -> &[u8] {
        match self {
            Loaded::Mapped(v) => v.metadata(),
            Loaded::Read(a) => a.metadata(),
        }
    }

    pub fn kind(&self) -> Result<ElementKind> {
        Ok(ElementKind::of_header(self.header())?)
    }

    pub fn elements(&self) -> Result<Elements> {
        Ok(decode_elements(self.data(), self.kind()?, self.header().is_big_endian())?)
    }
}

/// Maps `path`, falling back to a buffered read if mapping is unavailable.
pub fn open_array(path: impl AsRef<Path>) -> Result<Loaded> {
    let path = path.as_ref();
    match map_array(path) {
        Ok(view) => Ok(Loaded::Mapped(view)),
        Err(Error::MappingUnsupported(_)) => Ok(Loaded::Read(read_array(path)?)),
        Err(e) => Err(e),
    }
}

/// Appends bytes to the metadata trailer. The file is validated first and
/// left untouched if it is not a complete RawArray file.
pub fn append_metadata(path: impl AsRef<Path>, extra: &[u8]) -> Result<()> {
    let path = path.as_ref();
    read_header_and_metadata_len(path)?;
    if extra.is_empty() {
        return Ok(());
    }
    let mut file = OpenOptions::new().append(true).open(path)?;
    file.write_all(extra)?;
    file.flush()?;
    Ok(())
}

/// Where two arrays first differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Difference {
    Header { field: &'static str, left: String, right: String },
    Element { index: u64 },
    Metadata { offset: u64 },
}

impl std::fmt::Display for Difference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Difference::Header { field, left, right } => write!(f, "header field {field}: {left} != {right}"),
            Difference::Element { index } => write!(f, "data element {index}"),
            Difference::Metadata { offset } => write!(f, "metadata offset {offset}"),
        }
    }
}

fn header_difference(a: &Header, b: &Header) -> Option<Difference> {
    let field = |field, left: &dyn ToString, right: &dyn ToString| {
        Some(Difference::Header { field, left: left.to_string(), right: right.to_string() })
    };
    if a.eltype() != b.eltype() {
        return field("eltype", &a.eltype(), &b.eltype());
    }
    if a.elbyte() != b.elbyte() {
        return field("elbyte", &a.elbyte(), &b.elbyte());
    }
    if a.ndims() != b.ndims() {
        return field("ndims", &a.ndims(), &b.ndims());
    }
    if a.dims() != b.dims() {
        return field("dims", &format!("{:?}", a.dims()), &format!("{:?}", b.dims()));
    }
    None
}

/// Compares two loaded arrays by content. Byte order is normalized, so the
/// same values written little- and big-endian are equal.
pub fn first_difference(a: &Loaded, b: &Loaded, include_metadata: bool) -> Option<Difference> {
    let (ha, hb) = (a.header(), b.header());
    if let Some(d) = header_difference(ha, hb) {
        return Some(d);
    }
    let stride = ha.elbyte() as usize;
    let (da, db) = (a.data(), b.data());
    let data_diff = if ha.is_big_endian() == hb.is_big_endian() {
        first_unit_difference(da, db, stride)
    } else {
        // Resolution cannot fail for kinds whose swap width matters; structs
        // and unresolvable widths compare verbatim.
        match ElementKind::of_header(ha) {
            Ok(kind) => {
                let mut la = da.to_vec();
                let mut lb = db.to_vec();
                normalize_to_little_endian(&mut la, kind, ha.is_big_endian());
                normalize_to_little_endian(&mut lb, kind, hb.is_big_endian());
                first_unit_difference(&la, &lb, stride)
            }
            Err(_) => first_unit_difference(da, db, stride),
        }
    };
    if let Some(index) = data_diff {
        return Some(Difference::Element { index });
    }
    if include_metadata {
        let (ma, mb) = (a.metadata(), b.metadata());
        if ma != mb {
            let offset = ma.iter().zip(mb).position(|(x, y)| x != y).unwrap_or(ma.len().min(mb.len()));
            return Some(Difference::Metadata { offset: offset as u64 });
        }
    }
    None
}

fn first_unit_difference(a: &[u8], b: &[u8], stride: usize) -> Option<u64> {
    if a == b {
        return None;
    }
    a.chunks(stride).zip(b.chunks(stride)).position(|(x, y)| x != y).map(|i| i as u64)
}

/// File identity by content. Timestamps and other filesystem attributes are
/// never consulted.
pub fn content_equal(a: impl AsRef<Path>, b: impl AsRef<Path>, include_metadata: bool) -> Result<bool> {
    let a = open_array(a)?;
    let b = open_array(b)?;
    Ok(first_difference(&a, &b, include_metadata).is_none())
}

/// File size on disk, for the size law checks.
pub fn file_size(path: impl AsRef<Path>) -> Result<u64> {
    Ok(fs::metadata(path)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rawarray_core::{make_header, Complex};
    use std::io::Cursor;

    fn fixture() -> RaArray {
        let values: Vec<Complex<f32>> = (0..12).map(|k| Complex::new(k as f32, -1.0 / k as f32)).collect();
        RaArray::from_vec(values, &[3, 4]).unwrap()
    }

    #[test]
    fn scalar_file_is_56_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.ra");
        RaArray::from_vec(vec![0.0f64], &[]).unwrap().write(&p).unwrap();
        assert_eq!(file_size(&p).unwrap(), 56);
        let back = read_array(&p).unwrap();
        assert_eq!(back.header().ndims(), 0);
        assert_eq!(back.to_vec::<f64>().unwrap(), vec![0.0]);
    }

    #[test]
    fn vec_f32_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("myarray.ra");
        let vec1: Vec<f32> = vec![1.0, 2.0, 3.0, 4.0];
        let ra: RaArray = vec1.clone().into();
        ra.write(&p).unwrap();
        let vec2: Vec<f32> = RaArray::read(&p).unwrap().try_into().unwrap();
        assert_eq!(vec1, vec2);
    }

    #[test]
    fn metadata_is_trailing_bytes() {
        let mut bytes = fixture().to_bytes();
        bytes.extend_from_slice(b"thirteen byte");
        let arr = read_array_from(Cursor::new(&bytes), &ReadOptions::default()).unwrap();
        assert_eq!(arr.data().len(), 96);
        assert_eq!(arr.metadata(), b"thirteen byte");
    }

    #[test]
    fn truncated_data_is_reported() {
        let bytes = fixture().to_bytes();
        let err = read_array_from(Cursor::new(&bytes[..80]), &ReadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::TruncatedData { expected: 96, available: 16 }), "{err:?}");

        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.ra");
        fs::write(&p, &bytes[..80]).unwrap();
        assert!(matches!(read_array(&p), Err(Error::TruncatedData { .. })));
        assert!(matches!(map_array(&p), Err(Error::TruncatedData { .. })));
    }

    #[test]
    fn read_limit() {
        let bytes = fixture().to_bytes();
        let opts = ReadOptions { max_data_len: 95 };
        assert!(matches!(
            read_array_from(Cursor::new(&bytes), &opts),
            Err(Error::ExplicitlyTooLarge { len: 96, limit: 95 })
        ));
    }

    #[test]
    fn lying_header_does_not_allocate() {
        // Claims 2^60 bytes of data, provides none.
        let h = make_header(2, 1, &[1 << 60], false).unwrap();
        let opts = ReadOptions { max_data_len: u64::MAX };
        let err = read_array_from(Cursor::new(h.encode()), &opts).unwrap_err();
        assert!(matches!(err, Error::TruncatedData { available: 0, .. }));
    }

    #[test]
    fn empty_stream_is_truncated_header() {
        let err = read_array_from(Cursor::new(Vec::<u8>::new()), &ReadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Format(rawarray_core::Error::Truncated { .. })));
        assert_eq!(err.to_string(), "truncated header");
    }

    #[test]
    fn interrupted_write_keeps_original() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.ra");
        let original = fixture();
        original.write(&p).unwrap();
        let before = fs::read(&p).unwrap();

        let replacement = RaArray::from_vec(vec![1u8, 2, 3], &[3]).unwrap();
        let err = write_atomic(
            &p,
            |f| write_array_to(BufWriter::new(f), &replacement),
            || Err(io::Error::other("simulated crash before rename")),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Io(_)));
        assert_eq!(fs::read(&p).unwrap(), before);
        // The temp file is cleaned up.
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);

        // A failure while filling behaves the same.
        let err = write_atomic(&p, |_| Err(Error::Io(io::Error::other("disk gone"))), || Ok(())).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
        assert_eq!(fs::read(&p).unwrap(), before);
    }

    #[test]
    fn new_rejects_wrong_data_len() {
        let h = make_header(2, 1, &[4], false).unwrap();
        assert!(matches!(RaArray::new(h, vec![0; 3]), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn typed_access_checks_kind() {
        let arr = RaArray::from_vec(vec![1i32, 2], &[2]).unwrap();
        assert!(arr.to_vec::<f32>().is_err());
        assert_eq!(arr.to_vec::<i32>().unwrap(), vec![1, 2]);
    }

    #[test]
    fn mmap_env_parsing() {
        assert!(mmap_disabled(Some("0")));
        assert!(!mmap_disabled(Some("1")));
        assert!(!mmap_disabled(None));
    }

    #[test]
    fn append_then_read_metadata() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.ra");
        fixture().write(&p).unwrap();
        let before = fs::read(&p).unwrap();
        append_metadata(&p, b"").unwrap();
        assert_eq!(fs::read(&p).unwrap(), before);
        append_metadata(&p, br#"{"unit":"mm"}"#).unwrap();
        append_metadata(&p, b"!").unwrap();
        let arr = read_array(&p).unwrap();
        assert_eq!(arr.metadata(), br#"{"unit":"mm"}!"#);
        assert_eq!(arr.data(), fixture().data());
    }

    #[test]
    fn append_to_corrupt_file_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.ra");
        let mut bytes = fixture().to_bytes();
        bytes[0] = b'R';
        fs::write(&p, &bytes).unwrap();
        let err = append_metadata(&p, b"x").unwrap_err();
        assert!(matches!(err, Error::Format(rawarray_core::Error::BadMagic)));
        assert_eq!(fs::read(&p).unwrap(), bytes);
    }
}
