use std::path::Path;

use super::record::{median_elapsed, BenchRecord, Format, Op};
use super::strides::Workload;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Hdf5Outcome {
    /// ra and hdf5 records for the same workloads and trials.
    Records(Vec<BenchRecord>),
    /// Built without the `hdf5` feature.
    SkippedUnavailable,
}

/// Median write-then-read time of ra divided by that of HDF5. Below 1.0
/// means ra was faster.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedupRatio {
    pub workload: &'static str,
    pub ra_over_hdf5: f64,
}

pub fn hdf5_available() -> bool {
    cfg!(feature = "hdf5")
}

pub fn speedup_ratios(records: &[BenchRecord]) -> Vec<SpeedupRatio> {
    let total = |w: &str, f: Format| -> Option<f64> {
        Some((median_elapsed(records, w, f, Op::Write)? + median_elapsed(records, w, f, Op::Read)?).as_secs_f64())
    };
    Workload::ALL
        .iter()
        .filter_map(|w| {
            let (ra, h5) = (total(w.name(), Format::Ra)?, total(w.name(), Format::Hdf5)?);
            Some(SpeedupRatio { workload: w.name(), ra_over_hdf5: ra / h5 })
        })
        .collect()
}

#[cfg(feature = "hdf5")]
mod backend {
    use std::path::Path;

    use super::super::record::Format;
    use super::super::strides::Backend;
    use crate::error::{Error, Result};

    pub struct Hdf5Backend;

    fn h5(e: hdf5::Error) -> Error {
        Error::Io(std::io::Error::other(e.to_string()))
    }

    impl Backend for Hdf5Backend {
        fn format(&self) -> Format {
            Format::Hdf5
        }

        fn extension(&self) -> &'static str {
            "h5"
        }

        // Dims are stored slowest axis first, as HDF5 expects.
        fn write(&self, path: &Path, dims: &[u64], values: &[f32]) -> Result<()> {
            let shape: Vec<usize> = dims.iter().rev().map(|&d| d as usize).collect();
            let file = hdf5::File::create(path).map_err(h5)?;
            let ds = file.new_dataset::<f32>().shape(shape).create("data").map_err(h5)?;
            ds.write_raw(values).map_err(h5)?;
            Ok(())
        }

        fn read(&self, path: &Path) -> Result<Vec<f32>> {
            let file = hdf5::File::open(path).map_err(h5)?;
            file.dataset("data").map_err(h5)?.read_raw::<f32>().map_err(h5)
        }
    }
}

/// The stride workloads through both ra and HDF5, interleaved per trial.
#[cfg(feature = "hdf5")]
pub fn bench_hdf5_compare(scale: u64, trials: usize, dir: &Path) -> Result<Hdf5Outcome> {
    use super::strides::{run_workloads, RaBackend};
    let records = run_workloads(&[&RaBackend, &backend::Hdf5Backend], scale, trials, dir)?;
    Ok(Hdf5Outcome::Records(records))
}

#[cfg(not(feature = "hdf5"))]
pub fn bench_hdf5_compare(_scale: u64, _trials: usize, _dir: &Path) -> Result<Hdf5Outcome> {
    Ok(Hdf5Outcome::SkippedUnavailable)
}
