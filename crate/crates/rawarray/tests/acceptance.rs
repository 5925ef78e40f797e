//! One pass/fail line per acceptance criterion. Runs as a plain binary so
//! the lines are printed even when test output is captured.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::collections::HashSet;
use std::fs;
use std::io::Cursor;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use md5::{Digest, Md5};
use rand::RngExt;
use rawarray::bench::{
    bench_dataset_read, bench_hdf5_compare, bench_strides, median_elapsed, speedup_ratios, DatasetKind,
    DatasetSource, Format, Hdf5Outcome, Op,
};
use rawarray::fixtures::test_array;
use rawarray::format::{ElementKind, Header, MAGIC_BYTES};
use rawarray::*;

type Outcome = Result<String, String>;
type Check = fn(&Path) -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ra(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ra")).args(args).output().expect("ra runs");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn md5_hex(bytes: &[u8]) -> String {
    Md5::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn tokens(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

const OD_A_TRANSCRIPT: &str = "\
0000000    r   a   w   a   r   r   a   y nul nul nul nul nul nul nul nul
0000020";

const OD_UL_TRANSCRIPT: &str = "\
0000000              8746397786917265778              0
0000020              4                                8
0000040              96                               2
0000060";

const OD_F_TRANSCRIPT: &str = "\
0000100     0.000000e+00            -inf    1.000000e+00   -1.000000e+00
0000120     2.000000e+00   -5.000000e-01    3.000000e+00   -3.333333e-01
0000140     4.000000e+00   -2.500000e-01    5.000000e+00   -2.000000e-01
0000160     6.000000e+00   -1.666667e-01    7.000000e+00   -1.428571e-01
0000200     8.000000e+00   -1.250000e-01    9.000000e+00   -1.111111e-01
0000220     1.000000e+01   -1.000000e-01    1.100000e+01   -9.090909e-02
0000240";

const PUBLISHED_MD5: &str = "1dd9f98a0d57ec3c4d8ad50343bd20cd";

fn bit_exact_header(dir: &Path) -> Outcome {
    let mut rng = common::rng(1);
    for i in 0..100 {
        let path = dir.join(format!("h{i}.ra"));
        write_array(&path, &common::random_array(&mut rng)).map_err(|e| e.to_string())?;
        let bytes = fs::read(&path).map_err(|e| e.to_string())?;
        ensure!(bytes[..8] == [0x72, 0x61, 0x77, 0x61, 0x72, 0x72, 0x61, 0x79], "file {i} starts {:02x?}", &bytes[..8]);
        ensure!(bytes[..8] == MAGIC_BYTES, "magic constant disagrees");
    }
    let path = dir.join("test.ra");
    write_array(&path, &test_array()).map_err(|e| e.to_string())?;
    let (code, out) = ra(&["dump", path.to_str().unwrap(), "--format", "ascii", "--limit", "16"]);
    ensure!(code == Some(0), "ra dump exited {code:?}");
    ensure!(tokens(&out) == tokens(OD_A_TRANSCRIPT), "ascii dump differs:\n{out}");
    Ok("100 files begin with 72 61 77 61 72 72 61 79; ascii dump matches od -a".into())
}

fn fixture_reproduction(dir: &Path) -> Outcome {
    let path = dir.join("test.ra");
    write_array(&path, &test_array()).map_err(|e| e.to_string())?;
    let p = path.to_str().unwrap();

    let (code, info) = ra(&["info", p]);
    ensure!(code == Some(0), "ra info exited {code:?}");
    for line in ["eltype: complex (4)", "elbyte: 8", "data_length: 96", "ndims: 2", "dims: 3,4"] {
        ensure!(info.lines().any(|l| l == line), "info lacks '{line}':\n{info}");
    }
    let (_, words) = ra(&["dump", p, "--format", "u64", "--limit", "6"]);
    ensure!(tokens(&words) == tokens(OD_UL_TRANSCRIPT), "header words differ:\n{words}");
    let (_, floats) = ra(&["dump", p, "--format", "float"]);
    ensure!(tokens(&floats) == tokens(OD_F_TRANSCRIPT), "float transcript differs:\n{floats}");
    let (_, auto) = ra(&["dump", p]);
    ensure!(auto.starts_with("(0.000000e+00, -inf)\n"), "element dump starts {auto:?}");
    ensure!(auto.contains("(3.000000e+00, -3.333333e-01)"), "element dump lacks k=3");
    let digest = md5_hex(&fs::read(&path).map_err(|e| e.to_string())?);
    ensure!(digest == PUBLISHED_MD5, "md5 {digest}");
    Ok(format!("info, od -t uL words and od -f transcript match; md5 {digest} matches the published digest"))
}

fn round_trip_suite(dir: &Path) -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(2);
    let mut kinds = HashSet::new();
    let mut ndims = HashSet::new();
    let mut orders = HashSet::new();
    let mut max_meta = 0;
    let n = 1200;
    for i in 0..n {
        let arr = common::random_array(&mut rng);
        let path = dir.join(format!("rt{}.ra", i % 16));
        write_array(&path, &arr).map_err(|e| e.to_string())?;
        let size = file_size(&path).map_err(|e| e.to_string())?;
        ensure!(size == common::expected_file_len(&arr), "array {i}: size {size}");
        let back = read_array(&path).map_err(|e| e.to_string())?;
        ensure!(back == arr, "array {i}: read differs");
        let values = arr.elements().map_err(|e| e.to_string())?;
        ensure!(back.elements().map_err(|e| e.to_string())? == values, "array {i}: values differ");
        let view = map_array(&path).map_err(|e| e.to_string())?;
        ensure!(
            view.header() == arr.header() && view.data() == arr.data() && view.metadata() == arr.metadata(),
            "array {i}: mapped view differs"
        );
        ensure!(view.elements().map_err(|e| e.to_string())? == values, "array {i}: mapped values differ");
        kinds.insert(arr.kind().unwrap());
        ndims.insert(arr.header().ndims());
        orders.insert(arr.header().is_big_endian());
        max_meta = max_meta.max(arr.metadata().len());
    }
    for required in [ElementKind::Float(2), ElementKind::Float(16), ElementKind::Complex(8), ElementKind::Int(16)] {
        ensure!(kinds.contains(&required), "{required} not exercised");
    }
    ensure!(kinds.iter().any(|k| matches!(k, ElementKind::UserStruct(_))), "no struct kind exercised");
    ensure!((0..=5).all(|d| ndims.contains(&d)), "ndims coverage {ndims:?}");
    ensure!(orders.len() == 2, "only one byte order exercised");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("{n} arrays, {} kinds, ndims 0-5, both byte orders, metadata up to {max_meta} B, {elapsed:.2?}", kinds.len()))
}

fn classified(e: &Error) -> bool {
    e.is_malformed() || matches!(e, Error::ExplicitlyTooLarge { .. })
}

fn check_accepted(arr: &RaArray) -> Result<(), String> {
    let h = arr.header();
    let product = h.dims().iter().try_fold(h.elbyte(), |a, &d| a.checked_mul(d));
    ensure!(product == Some(h.data_length()) && arr.data().len() as u64 == h.data_length(), "accepted inconsistent {h:?}");
    ensure!(h.eltype() <= 4 && h.flags() & !1 == 0, "accepted invalid {h:?}");
    Ok(())
}

fn mutate(rng: &mut rand_chacha::ChaCha8Rng, base: &[u8]) -> Vec<u8> {
    let mut b = base.to_vec();
    match rng.random_range(0..6) {
        0 => {
            for _ in 0..rng.random_range(1..8) {
                let i = rng.random_range(0..b.len());
                b[i] ^= 1 << rng.random_range(0..8);
            }
        }
        1 => b.truncate(rng.random_range(0..b.len())),
        2 => {
            let word = rng.random_range(0..6usize);
            let value: u64 = match rng.random_range(0..4) {
                0 => rng.random(),
                1 => rng.random_range(0..16),
                2 => u64::MAX - rng.random_range(0..4),
                _ => 1 << rng.random_range(0..64),
            };
            b[8 * word..8 * word + 8].copy_from_slice(&value.to_le_bytes());
        }
        3 => {
            let start = rng.random_range(0..b.len());
            let end = (start + rng.random_range(1..64)).min(b.len());
            rng.fill(&mut b[start..end]);
        }
        4 => {
            let extra = rng.random_range(1..64);
            b.extend((0..extra).map(|_| rng.random::<u8>()));
            let i = rng.random_range(0..48);
            b[i] = rng.random();
        }
        _ => {
            b = vec![0u8; rng.random_range(0..128)];
            rng.fill(&mut b[..]);
            if rng.random() {
                b.splice(0..b.len().min(8), MAGIC_BYTES);
            }
        }
    }
    b
}

fn fuzz_safety(dir: &Path) -> Outcome {
    let mut rng = common::rng(3);
    let bases: Vec<Vec<u8>> = (0..32)
        .map(|_| {
            let mut arr = common::random_array(&mut rng);
            arr = RaArray::new(arr.header().clone(), arr.data().to_vec()).unwrap().with_metadata(arr.metadata()[..arr.metadata().len().min(64)].to_vec());
            arr.to_bytes()
        })
        .chain([test_array().to_bytes()])
        .collect();
    let opts = ReadOptions { max_data_len: 1 << 26 };
    let (mut rejected, mut accepted, mut slowest) = (0, 0, Duration::ZERO);
    let file = dir.join("fuzz.ra");
    for i in 0..10_000 {
        let base = &bases[rng.random_range(0..bases.len())];
        let input = mutate(&mut rng, base);
        let via_file = i % 10 == 0;
        if via_file {
            fs::write(&file, &input).map_err(|e| e.to_string())?;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| -> Result<Option<String>, String> {
            let _ = Header::decode(&input);
            let parsed = if via_file {
                let mapped = map_array(&file).map(|v| v.to_array());
                let read = read_array_with(&file, &opts);
                match (&mapped, &read) {
                    (Ok(a), Ok(b)) if a != b => return Err("map and read disagree".into()),
                    (Ok(_), Err(_)) | (Err(_), Ok(_)) => return Err("map and read disagree on validity".into()),
                    _ => {}
                }
                read
            } else {
                read_array_from(Cursor::new(&input), &opts)
            };
            match parsed {
                Ok(arr) => {
                    check_accepted(&arr)?;
                    let _ = arr.elements();
                    Ok(None)
                }
                Err(e) if classified(&e) => Ok(Some(e.to_string())),
                Err(e) => Err(format!("unclassified error {e:?}")),
            }
        }));
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure!(elapsed < Duration::from_secs(1), "input {i} took {elapsed:?}");
        match result {
            Err(_) => return Err(format!("input {i} panicked")),
            Ok(Err(msg)) => return Err(format!("input {i}: {msg}")),
            Ok(Ok(Some(_))) => rejected += 1,
            Ok(Ok(None)) => accepted += 1,
        }
    }
    Ok(format!("10000 inputs, {rejected} classified errors, {accepted} valid, 0 panics, slowest {slowest:.2?}"))
}

fn stride_shape(dir: &Path) -> Outcome {
    let start = Instant::now();
    let records = bench_strides(10, 5, dir).map_err(|e| e.to_string())?;
    let vectors = median_elapsed(&records, "vectors", Format::Ra, Op::Write).unwrap();
    let matrix = median_elapsed(&records, "matrix", Format::Ra, Op::Write).unwrap();
    ensure!(vectors > matrix, "vectors write {vectors:?} <= matrix write {matrix:?}");
    let mut detail = format!("median write vectors {vectors:.2?} > matrix {matrix:.2?}");
    match bench_hdf5_compare(10, 5, dir).map_err(|e| e.to_string())? {
        Hdf5Outcome::SkippedUnavailable => detail.push_str("; hdf5 comparison skipped (feature off)"),
        Hdf5Outcome::Records(rs) => {
            for r in speedup_ratios(&rs) {
                detail.push_str(&format!("; {} ra/hdf5 {:.2} ({:.1}x)", r.workload, r.ra_over_hdf5, 1.0 / r.ra_over_hdf5));
                if r.workload != "matrix" {
                    ensure!(r.ra_over_hdf5 <= 1.0, "ra slower than hdf5 on {}: ratio {:.3}", r.workload, r.ra_over_hdf5);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    Ok(format!("{detail}; {elapsed:.1?}"))
}

fn dataset_direction(dir: &Path) -> Outcome {
    let start = Instant::now();
    let mut detail = Vec::new();
    for (kind, required) in [(DatasetKind::MnistLike, 1.2), (DatasetKind::CifarLike, 1.5)] {
        let records = bench_dataset_read(kind, 5000, &DatasetSource::Synthetic { seed: 4 }, &dir.join(kind.name()), 5, false)
            .map_err(|e| e.to_string())?;
        let png = median_elapsed(&records, kind.name(), Format::Png, Op::Read).unwrap();
        let ra = median_elapsed(&records, kind.name(), Format::Ra, Op::Read).unwrap();
        let ratio = png.as_secs_f64() / ra.as_secs_f64();
        ensure!(ratio > required, "{}: png/ra {ratio:.2} not above {required}", kind.name());
        detail.push(format!("{} png/ra {ratio:.2}", kind.name()));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!("{}; {elapsed:.1?}", detail.join(", ")))
}

fn checksum_workflow(dir: &Path) -> Outcome {
    let mut rng = common::rng(5);
    for i in 0..100 {
        let arr = common::random_array(&mut rng);
        // Rebuilt from its parts, as a separate program would.
        let (header, data, metadata) = arr.clone().into_parts();
        let again = RaArray::new(Header::decode(&header.encode()).unwrap(), data).unwrap().with_metadata(metadata);
        let (a, b) = (dir.join("first.ra"), dir.join("second.ra"));
        write_array(&a, &arr).map_err(|e| e.to_string())?;
        std::thread::sleep(Duration::from_millis(if i == 0 { 20 } else { 0 }));
        write_array(&b, &again).map_err(|e| e.to_string())?;
        let da = md5_hex(&fs::read(&a).map_err(|e| e.to_string())?);
        let db = md5_hex(&fs::read(&b).map_err(|e| e.to_string())?);
        ensure!(da == db, "array {i}: {da} != {db}");
    }
    Ok("100 arrays written twice give identical md5 digests".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 7] = [
        ("bit-exact header", bit_exact_header),
        ("fixture reproduction", fixture_reproduction),
        ("round-trip property suite", round_trip_suite),
        ("fuzz safety", fuzz_safety),
        ("stride benchmark shape", stride_shape),
        ("dataset benchmark direction", dataset_direction),
        ("external checksum workflow", checksum_workflow),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let dir = tempfile::tempdir().expect("scratch dir");
        let outcome = catch_unwind(AssertUnwindSafe(|| check(dir.path()))).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
