#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rawarray::format::{header_len, ElementKind, Header};
use rawarray::RaArray;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const KINDS: [ElementKind; 20] = [
    ElementKind::Int(1),
    ElementKind::Int(2),
    ElementKind::Int(4),
    ElementKind::Int(8),
    ElementKind::Int(16),
    ElementKind::Int(3),
    ElementKind::UInt(1),
    ElementKind::UInt(2),
    ElementKind::UInt(4),
    ElementKind::UInt(8),
    ElementKind::UInt(32),
    ElementKind::Float(2),
    ElementKind::Float(4),
    ElementKind::Float(8),
    ElementKind::Float(16),
    ElementKind::Complex(2),
    ElementKind::Complex(4),
    ElementKind::Complex(8),
    ElementKind::UserStruct(1),
    ElementKind::UserStruct(24),
];

pub fn random_kind(rng: &mut ChaCha8Rng) -> ElementKind {
    match rng.random_range(0..KINDS.len() + 1) {
        i if i < KINDS.len() => KINDS[i],
        _ => ElementKind::UserStruct(rng.random_range(1..64)),
    }
}

/// Random array: any kind, either byte order, 0 to 5 dims, random element
/// bytes and 0 to 4096 bytes of metadata.
pub fn random_array(rng: &mut ChaCha8Rng) -> RaArray {
    let kind = random_kind(rng);
    let ndims = rng.random_range(0..=5usize);
    let dims: Vec<u64> = (0..ndims).map(|_| rng.random_range(0..=5u64)).collect();
    let header = Header::new(kind.type_code(), kind.stride() as u64, &dims, rng.random()).unwrap();
    let mut data = vec![0u8; header.data_length() as usize];
    rng.fill(&mut data[..]);
    let mut metadata = vec![0u8; rng.random_range(0..=4096usize)];
    rng.fill(&mut metadata[..]);
    RaArray::new(header, data).unwrap().with_metadata(metadata)
}

pub fn expected_file_len(arr: &RaArray) -> u64 {
    let h = arr.header();
    (header_len(h.ndims()) as u64) + h.data_length() + arr.metadata().len() as u64
}

/// Structural facts every accepted header must satisfy.
pub fn assert_header_invariants(h: &Header) {
    let product = h.dims().iter().try_fold(h.elbyte(), |a, &d| a.checked_mul(d));
    assert_eq!(product, Some(h.data_length()));
    assert!(h.eltype() <= 4 && h.elbyte() >= 1);
    assert_eq!(h.flags() & !1, 0);
    assert_eq!(h.encoded_len(), 48 + 8 * h.ndims());
}
