//! Desk-scale reproductions of the stride and small-image read benchmarks.
//!
//! All timings use the monotonic clock, run on the calling thread, and are
//! accepted only after a sample of the read-back values has been checked.

mod dataset;
mod hdf5;
mod record;
mod strides;

use std::path::Path;

pub use dataset::{bench_dataset_read, bench_prepared, prepare_dataset, DatasetKind, DatasetSource, PreparedDataset};
pub use hdf5::{bench_hdf5_compare, hdf5_available, speedup_ratios, Hdf5Outcome, SpeedupRatio};
pub use record::{emit_results, median_elapsed, write_csv, BenchRecord, Format, Op, CSV_HEADER};
pub use strides::{bench_strides, Workload};

/// Default trial count; medians are taken over at least this many runs.
pub const DEFAULT_TRIALS: usize = 5;

/// Best-effort request for the OS to drop its page cache. Silently does
/// nothing where that is not permitted.
pub fn drop_caches() {
    let _ = std::process::Command::new("sync").status();
    let _ = std::fs::write("/proc/sys/vm/drop_caches", b"3\n");
}

pub(crate) fn clear_dir(dir: &Path) -> crate::Result<()> {
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            std::fs::remove_dir_all(&path)?;
        } else {
            std::fs::remove_file(&path)?;
        }
    }
    Ok(())
}
