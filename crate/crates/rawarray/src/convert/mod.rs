//! Conversions between RawArray and the formats it is benchmarked against
//! or imported from.

pub mod idx;
pub mod npy;
pub mod png;

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::io::{read_array, write_array, RaArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SourceFormat {
    Idx,
    Png,
    /// C-contiguous numeric `.npy` only.
    Npy,
    Ra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TargetFormat {
    Ra,
    Png,
    /// The data segment alone, in the array's stored byte order.
    Raw,
}

pub fn load(input: &Path, from: SourceFormat) -> Result<RaArray> {
    match from {
        SourceFormat::Idx => idx::idx_to_array(&fs::read(input)?),
        SourceFormat::Png => png::png_to_array(&fs::read(input)?),
        SourceFormat::Npy => npy::npy_to_array(&fs::read(input)?),
        SourceFormat::Ra => read_array(input),
    }
}

pub fn store(arr: &RaArray, output: &Path, to: TargetFormat) -> Result<()> {
    match to {
        TargetFormat::Ra => write_array(output, arr),
        TargetFormat::Png => Ok(fs::write(output, png::array_to_png(arr)?)?),
        TargetFormat::Raw => Ok(fs::write(output, arr.data())?),
    }
}

pub fn convert(input: &Path, output: &Path, from: SourceFormat, to: TargetFormat) -> Result<()> {
    let arr = load(input, from)?;
    store(&arr, output, to)
}
