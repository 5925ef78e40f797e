use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::record::{BenchRecord, Format, Op};
use crate::error::{Error, Result};
use crate::io::{read_array, write_array, RaArray};

/// Float count per workload at scale 1.
const FULL_SCALE_FLOATS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Workload {
    /// Many files holding a length-10 vector each.
    Vectors,
    /// Many files holding a 10x10 image each.
    Images,
    /// One 10xN matrix.
    Matrix,
}

impl Workload {
    pub const ALL: [Workload; 3] = [Workload::Vectors, Workload::Images, Workload::Matrix];

    pub fn name(self) -> &'static str {
        match self {
            Workload::Vectors => "vectors",
            Workload::Images => "images",
            Workload::Matrix => "matrix",
        }
    }

    /// Floats per workload. Rounded down to a multiple of 100 so every
    /// workload holds exactly the same number.
    pub fn total_floats(scale: u64) -> u64 {
        FULL_SCALE_FLOATS / scale.max(1) / 100 * 100
    }

    /// Number of files and the dims of each.
    pub fn layout(self, scale: u64) -> (u64, Vec<u64>) {
        let n = Self::total_floats(scale);
        match self {
            Workload::Vectors => (n / 10, vec![10]),
            Workload::Images => (n / 100, vec![10, 10]),
            Workload::Matrix => (1, vec![10, n / 10]),
        }
    }
}

/// A storage format under test: writes and reads back one f32 array.
pub(crate) trait Backend {
    fn format(&self) -> Format;
    fn extension(&self) -> &'static str;
    fn write(&self, path: &Path, dims: &[u64], values: &[f32]) -> Result<()>;
    fn read(&self, path: &Path) -> Result<Vec<f32>>;
}

pub(crate) struct RaBackend;

impl Backend for RaBackend {
    fn format(&self) -> Format {
        Format::Ra
    }

    fn extension(&self) -> &'static str {
        "ra"
    }

    fn write(&self, path: &Path, dims: &[u64], values: &[f32]) -> Result<()> {
        write_array(path, &RaArray::from_vec(values.to_vec(), dims)?)
    }

    fn read(&self, path: &Path) -> Result<Vec<f32>> {
        read_array(path)?.to_vec()
    }
}

/// Runs every workload for every backend, `trials` times, write then read.
/// Backends alternate within each trial so drift affects them alike.
pub(crate) fn run_workloads(backends: &[&dyn Backend], scale: u64, trials: usize, dir: &Path) -> Result<Vec<BenchRecord>> {
    if Workload::total_floats(scale) == 0 {
        return Err(Error::InvariantViolation(format!("scale {scale} leaves no data")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut records = Vec::new();
    for trial in 0..trials {
        for (w, workload) in Workload::ALL.iter().enumerate() {
            let (files, dims) = workload.layout(scale);
            let per_file: usize = dims.iter().product::<u64>() as usize;
            let values: Vec<f32> = (0..files as usize * per_file).map(|_| rng.random()).collect();
            for b in 0..backends.len() {
                let backend = backends[(b + trial + w) % backends.len()];
                let sub = dir.join(format!("{}-{}", workload.name(), backend.extension()));
                fs::create_dir_all(&sub)?;
                super::clear_dir(&sub)?;
                let paths: Vec<PathBuf> =
                    (0..files).map(|i| sub.join(format!("{i:06}.{}", backend.extension()))).collect();
                let bytes_total = values.len() as u64 * 4;

                let start = Instant::now();
                for (path, chunk) in paths.iter().zip(values.chunks_exact(per_file)) {
                    backend.write(path, &dims, chunk)?;
                }
                let elapsed = start.elapsed();
                records.push(BenchRecord::new(workload.name(), backend.format(), Op::Write, files, bytes_total, elapsed));

                let start = Instant::now();
                let mut back = Vec::with_capacity(paths.len());
                for path in &paths {
                    back.push(backend.read(path)?);
                }
                let elapsed = start.elapsed();
                verify_sample(&mut rng, &values, &back, per_file)?;
                records.push(BenchRecord::new(workload.name(), backend.format(), Op::Read, files, bytes_total, elapsed));
                super::clear_dir(&sub)?;
            }
        }
    }
    Ok(records)
}

fn verify_sample(rng: &mut ChaCha8Rng, written: &[f32], read: &[Vec<f32>], per_file: usize) -> Result<()> {
    for _ in 0..32 {
        let i = rng.random_range(0..written.len());
        let got = read[i / per_file].get(i % per_file).copied();
        if got.map(f32::to_bits) != Some(written[i].to_bits()) {
            return Err(Error::InvariantViolation(format!("read-back mismatch at element {i}")));
        }
    }
    Ok(())
}

/// Stride workloads at `1/scale` of full size, write then read, through the
/// ra format. Scratch files live under `dir` and are removed afterwards.
pub fn bench_strides(scale: u64, trials: usize, dir: &Path) -> Result<Vec<BenchRecord>> {
    run_workloads(&[&RaBackend], scale, trials, dir)
}
