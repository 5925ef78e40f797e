//! Generators for the files shipped under `data/`.

use rawarray_core::{Complex, Header, TypeCode, FIXED_HEADER_LEN};

use crate::io::RaArray;

/// The sample file: complex64, dims `[3, 4]`, element k = (k, -1/k) in
/// single precision, so element 0 holds -inf.
pub fn test_array() -> RaArray {
    let values: Vec<Complex<f32>> = (0..12).map(|k| Complex::new(k as f32, -1.0 / k as f32)).collect();
    RaArray::from_vec(values, &[3, 4]).expect("consistent dims")
}

/// Malformed files, each paired with the name it is shipped under.
pub fn corrupt_fixtures() -> Vec<(&'static str, Vec<u8>)> {
    let good = test_array().to_bytes();
    let with_word = |word: usize, value: u64| {
        let mut b = good.clone();
        b[8 * word..8 * word + 8].copy_from_slice(&value.to_le_bytes());
        b
    };
    let mut bad_magic = good.clone();
    bad_magic[..8].copy_from_slice(b"rawarrax");
    let mut huge_dims = good.clone();
    huge_dims[40..48].copy_from_slice(&65536u64.to_le_bytes());
    vec![
        ("bad_magic.ra", bad_magic),
        ("truncated_header.ra", good[..FIXED_HEADER_LEN + 4].to_vec()),
        ("truncated_data.ra", good[..80].to_vec()),
        ("unknown_flags.ra", with_word(1, 2)),
        ("reserved_type.ra", with_word(2, 5)),
        ("odd_complex_width.ra", with_word(3, 7)),
        ("size_mismatch.ra", with_word(4, 95)),
        ("too_many_dims.ra", huge_dims),
        ("empty.ra", Vec::new()),
    ]
}

/// The sample file with big-endian data.
pub fn test_array_big_endian() -> RaArray {
    let arr = test_array();
    let kind = arr.kind().expect("known kind");
    let header = Header::new(TypeCode::Complex, 8, &[3, 4], true).expect("consistent dims");
    let data = rawarray_core::encode_elements(&arr.elements().expect("decodes"), kind, true).expect("encodes");
    RaArray::new(header, data).expect("sized")
}
