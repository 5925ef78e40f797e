//! Column-major linearization: `dims[0]` varies fastest.
//!
//! The on-disk format itself does not fix an ordering; this crate and its
//! converters use column-major throughout.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Offset (in elements) of the multi-index `idx` within an array of shape `dims`.
pub fn linear_index(idx: &[u64], dims: &[u64]) -> Result<u64> {
    if idx.len() != dims.len() {
        return Err(Error::OutOfBounds);
    }
    let mut offset = 0u64;
    let mut step = 1u64;
    for (&i, &d) in idx.iter().zip(dims) {
        if i >= d {
            return Err(Error::OutOfBounds);
        }
        offset = i.checked_mul(step).and_then(|v| v.checked_add(offset)).ok_or(Error::OutOfBounds)?;
        step = step.saturating_mul(d);
    }
    Ok(offset)
}

/// Inverse of [`linear_index`].
pub fn unravel_index(mut offset: u64, dims: &[u64]) -> Result<Vec<u64>> {
    let total = dims.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d));
    match total {
        Some(t) if offset < t => {}
        _ => return Err(Error::OutOfBounds),
    }
    let mut idx = Vec::with_capacity(dims.len());
    for &d in dims {
        idx.push(offset % d);
        offset /= d;
    }
    Ok(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn examples() {
        assert_eq!(linear_index(&[0, 0], &[3, 4]), Ok(0));
        assert_eq!(linear_index(&[2, 0], &[3, 4]), Ok(2));
        assert_eq!(linear_index(&[0, 1], &[3, 4]), Ok(3));
        assert_eq!(linear_index(&[], &[]), Ok(0));
        assert_eq!(linear_index(&[3, 0], &[3, 4]), Err(Error::OutOfBounds));
        assert_eq!(linear_index(&[0], &[3, 4]), Err(Error::OutOfBounds));
    }

    #[test]
    fn unravel_examples() {
        assert_eq!(unravel_index(3, &[3, 4]), Ok(vec![0, 1]));
        assert_eq!(unravel_index(11, &[3, 4]), Ok(vec![2, 3]));
        assert_eq!(unravel_index(12, &[3, 4]), Err(Error::OutOfBounds));
        assert_eq!(unravel_index(0, &[]), Ok(vec![]));
    }
}
