//! `ra-bench`: stride workloads, small-image reads against PNG, and an
//! optional HDF5 comparison. Results go to CSV; medians to stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rawarray::bench::{
    bench_dataset_read, bench_hdf5_compare, bench_strides, emit_results, median_elapsed, speedup_ratios, write_csv,
    BenchRecord, DatasetKind, DatasetSource, Format, Hdf5Outcome, Op, Workload, DEFAULT_TRIALS,
};
use rawarray::Result;

#[derive(Parser)]
#[command(name = "ra-bench", version, about = "RawArray I/O benchmarks")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Scratch directory; a temporary one is used when omitted.
    #[arg(long, global = true)]
    dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Many tiny vectors, many small images and one matrix, same total bytes.
    Strides {
        #[arg(long, default_value_t = 10)]
        scale: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a small-image dataset stored as PNG and as ra.
    Dataset {
        #[arg(long, value_enum)]
        kind: DatasetKind,
        #[arg(long, default_value_t = 50_000)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use images from an IDX file instead of synthetic pixels.
        #[arg(long)]
        idx: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Drop the OS page cache before each pass, where permitted.
        #[arg(long)]
        cold: bool,
    },
    /// The stride workloads through ra and HDF5.
    Hdf5 {
        #[arg(long, default_value_t = 10)]
        scale: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn report(records: &[BenchRecord], out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => emit_results(records, path),
        None => write_csv(records, std::io::stdout().lock()),
    }
}

fn print_median(workload: &str, format: Format, op: Op, records: &[BenchRecord]) {
    if let Some(m) = median_elapsed(records, workload, format, op) {
        eprintln!("median {workload} {format} {op}: {:.6} s", m.as_secs_f64());
    }
}

fn run(args: Args) -> Result<()> {
    let scratch = tempfile::tempdir()?;
    let dir = args.dir.unwrap_or_else(|| scratch.path().to_path_buf());
    std::fs::create_dir_all(&dir)?;
    match args.command {
        Command::Strides { scale, trials, out } => {
            let records = bench_strides(scale, trials, &dir)?;
            for w in Workload::ALL {
                for op in [Op::Write, Op::Read] {
                    print_median(w.name(), Format::Ra, op, &records);
                }
            }
            report(&records, out)
        }
        Command::Dataset { kind, count, trials, out, idx, seed, cold } => {
            let source = match idx {
                Some(path) => DatasetSource::Idx(path),
                None => DatasetSource::Synthetic { seed },
            };
            let records = bench_dataset_read(kind, count, &source, &dir.join(kind.name()), trials, cold)?;
            let png = median_elapsed(&records, kind.name(), Format::Png, Op::Read);
            let ra = median_elapsed(&records, kind.name(), Format::Ra, Op::Read);
            if let (Some(png), Some(ra)) = (png, ra) {
                eprintln!(
                    "median read {}: png {:.6} s, ra {:.6} s, png/ra {:.2}",
                    kind.name(),
                    png.as_secs_f64(),
                    ra.as_secs_f64(),
                    png.as_secs_f64() / ra.as_secs_f64()
                );
            }
            report(&records, out)
        }
        Command::Hdf5 { scale, trials, out } => match bench_hdf5_compare(scale, trials, &dir)? {
            Hdf5Outcome::SkippedUnavailable => {
                eprintln!("hdf5 comparison skipped: built without the hdf5 feature");
                Ok(())
            }
            Hdf5Outcome::Records(records) => {
                for r in speedup_ratios(&records) {
                    eprintln!("{}: ra/hdf5 elapsed ratio {:.3}", r.workload, r.ra_over_hdf5);
                }
                report(&records, out)
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
