use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use crate::error::Result;

pub const CSV_HEADER: &str = "workload,format,op,files,bytes_total,elapsed_s,throughput_bps";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Format {
    Ra,
    Png,
    Hdf5,
    Baseline,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Ra => "ra",
            Format::Png => "png",
            Format::Hdf5 => "hdf5",
            Format::Baseline => "baseline",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Write,
    Read,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Write => "write",
            Op::Read => "read",
        })
    }
}

/// One timed measurement: `files` files totalling `bytes_total` bytes.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub workload: String,
    pub format: Format,
    pub op: Op,
    pub files: u64,
    pub bytes_total: u64,
    pub elapsed: Duration,
}

impl BenchRecord {
    /// Zero durations are clamped to one nanosecond so throughput stays finite.
    pub fn new(workload: impl Into<String>, format: Format, op: Op, files: u64, bytes_total: u64, elapsed: Duration) -> Self {
        BenchRecord {
            workload: workload.into(),
            format,
            op,
            files,
            bytes_total,
            elapsed: elapsed.max(Duration::from_nanos(1)),
        }
    }

    pub fn elapsed_secs(&self) -> f64 {
        self.elapsed.as_secs_f64()
    }

    /// Bytes per second.
    pub fn throughput(&self) -> f64 {
        self.bytes_total as f64 / self.elapsed_secs()
    }
}

/// Median elapsed time over the records matching `(workload, format, op)`.
/// Even counts average the two middle values.
pub fn median_elapsed(records: &[BenchRecord], workload: &str, format: Format, op: Op) -> Option<Duration> {
    let mut times: Vec<Duration> = records
        .iter()
        .filter(|r| r.workload == workload && r.format == format && r.op == op)
        .map(|r| r.elapsed)
        .collect();
    if times.is_empty() {
        return None;
    }
    times.sort();
    let n = times.len();
    Some(if n % 2 == 1 { times[n / 2] } else { (times[n / 2 - 1] + times[n / 2]) / 2 })
}

/// Writes the CSV to `out`. Rows are ordered by workload, format and op;
/// trials of the same triple keep their run order.
pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> Result<()> {
    let mut rows: Vec<&BenchRecord> = records.iter().collect();
    rows.sort_by(|a, b| (&a.workload, a.format, a.op).cmp(&(&b.workload, b.format, b.op)));
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.9},{:.3}",
            r.workload,
            r.format,
            r.op,
            r.files,
            r.bytes_total,
            r.elapsed_secs(),
            r.throughput()
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn emit_results(records: &[BenchRecord], out: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    fs::write(out, buf)?;
    Ok(())
}
