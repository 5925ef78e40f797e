use std::fs;
use std::io::Cursor;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::record::{BenchRecord, Format, Op};
use crate::convert::idx::{idx_to_array, split_last_axis};
use crate::convert::png::{array_to_pixels, decode_png, encode_png};
use crate::error::{Error, Result};
use crate::io::{read_array, write_array, RaArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DatasetKind {
    /// 28x28 grayscale, 8 bits.
    MnistLike,
    /// 36x36 RGB, 8 bits per channel.
    CifarLike,
}

impl DatasetKind {
    pub fn name(self) -> &'static str {
        match self {
            DatasetKind::MnistLike => "mnist-like",
            DatasetKind::CifarLike => "cifar-like",
        }
    }

    pub fn dims(self) -> Vec<u64> {
        match self {
            DatasetKind::MnistLike => vec![28, 28],
            DatasetKind::CifarLike => vec![3, 36, 36],
        }
    }

    pub fn image_bytes(self) -> u64 {
        self.dims().iter().product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatasetSource {
    /// Seeded pseudo-random pixels.
    Synthetic { seed: u64 },
    /// An IDX image stack, e.g. the MNIST training images.
    Idx(PathBuf),
}

/// One PNG and one ra file per image, identical pixels.
#[derive(Debug, Clone)]
pub struct PreparedDataset {
    pub kind: DatasetKind,
    pub png: Vec<PathBuf>,
    pub ra: Vec<PathBuf>,
}

impl PreparedDataset {
    pub fn len(&self) -> usize {
        self.ra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ra.is_empty()
    }
}

fn source_images(kind: DatasetKind, count: usize, source: &DatasetSource) -> Result<Vec<RaArray>> {
    match source {
        DatasetSource::Synthetic { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let dims = kind.dims();
            (0..count)
                .map(|_| {
                    let mut px = vec![0u8; kind.image_bytes() as usize];
                    rng.fill(&mut px[..]);
                    RaArray::from_vec(px, &dims)
                })
                .collect()
        }
        DatasetSource::Idx(path) => {
            let bytes = fs::read(path).map_err(|e| match e.kind() {
                std::io::ErrorKind::NotFound => Error::DatasetMissing(path.display().to_string()),
                _ => e.into(),
            })?;
            let stack = idx_to_array(&bytes)?;
            let mut images = split_last_axis(&stack)?;
            if images.first().is_some_and(|im| im.header().dims() != kind.dims().as_slice()) {
                return Err(Error::UnsupportedSourceShape(format!(
                    "idx images have dims {:?}, {} needs {:?}",
                    images[0].header().dims(),
                    kind.name(),
                    kind.dims()
                )));
            }
            if images.len() < count {
                return Err(Error::DatasetMissing(format!("{} holds {} images, {count} requested", path.display(), images.len())));
            }
            images.truncate(count);
            Ok(images)
        }
    }
}

/// Writes `count` images to `dir` as both PNG and ra.
pub fn prepare_dataset(kind: DatasetKind, count: usize, source: &DatasetSource, dir: &Path) -> Result<PreparedDataset> {
    fs::create_dir_all(dir)?;
    let mut set = PreparedDataset { kind, png: Vec::with_capacity(count), ra: Vec::with_capacity(count) };
    for (i, image) in source_images(kind, count, source)?.into_iter().enumerate() {
        let png = dir.join(format!("{i:06}.png"));
        let ra = dir.join(format!("{i:06}.ra"));
        fs::write(&png, encode_png(&array_to_pixels(&image)?)?)?;
        write_array(&ra, &image)?;
        set.png.push(png);
        set.ra.push(ra);
    }
    Ok(set)
}

fn read_png_all(paths: &[PathBuf]) -> Result<Vec<Vec<u8>>> {
    paths.iter().map(|p| Ok(decode_png(Cursor::new(fs::read(p)?))?.data)).collect()
}

fn read_ra_all(paths: &[PathBuf]) -> Result<Vec<Vec<u8>>> {
    paths.iter().map(|p| Ok(read_array(p)?.into_parts().1)).collect()
}

fn check_present(set: &PreparedDataset) -> Result<()> {
    match set.png.iter().chain(&set.ra).find(|p| !p.is_file()) {
        Some(p) => Err(Error::DatasetMissing(p.display().to_string())),
        None => Ok(()),
    }
}

/// Times reading every image of a prepared dataset through the PNG decoder
/// and through the ra reader. Paths alternate which goes first per trial;
/// with `cold` the page cache is dropped before each pass where permitted.
pub fn bench_prepared(set: &PreparedDataset, trials: usize, cold: bool) -> Result<Vec<BenchRecord>> {
    check_present(set)?;
    let files = set.len() as u64;
    let bytes_total = files * set.kind.image_bytes();
    let mut rng = ChaCha8Rng::seed_from_u64(files);
    let mut records = Vec::new();
    for trial in 0..trials {
        let order = if trial % 2 == 0 { [Format::Png, Format::Ra] } else { [Format::Ra, Format::Png] };
        let mut outputs = Vec::new();
        for format in order {
            if cold {
                super::drop_caches();
            }
            let start = Instant::now();
            let images = match format {
                Format::Png => read_png_all(&set.png)?,
                _ => read_ra_all(&set.ra)?,
            };
            let elapsed = start.elapsed();
            records.push(BenchRecord::new(set.kind.name(), format, Op::Read, files, bytes_total, elapsed));
            outputs.push(images);
        }
        for _ in 0..16.min(set.len()) {
            let i = rng.random_range(0..set.len());
            if outputs[0][i] != outputs[1][i] {
                return Err(Error::InvariantViolation(format!("image {i} differs between png and ra")));
            }
        }
    }
    Ok(records)
}

/// Prepares `count` images under `dir` and benchmarks reading them back.
pub fn bench_dataset_read(
    kind: DatasetKind,
    count: usize,
    source: &DatasetSource,
    dir: &Path,
    trials: usize,
    cold: bool,
) -> Result<Vec<BenchRecord>> {
    let set = prepare_dataset(kind, count, source, dir)?;
    bench_prepared(&set, trials, cold)
}
