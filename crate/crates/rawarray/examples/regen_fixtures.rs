//! Regenerates the sample and malformed files under `data/`.
//!
//! Usage: cargo run --example regen_fixtures [-- DIR]

use std::path::PathBuf;

use rawarray::fixtures::{corrupt_fixtures, test_array, test_array_big_endian};
use rawarray::write_array;

fn main() -> rawarray::Result<()> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    std::fs::create_dir_all(dir.join("corrupt"))?;
    write_array(dir.join("test.ra"), &test_array())?;
    write_array(dir.join("test_be.ra"), &test_array_big_endian())?;
    for (name, bytes) in corrupt_fixtures() {
        std::fs::write(dir.join("corrupt").join(name), bytes)?;
    }
    println!("wrote fixtures to {}", dir.display());
    Ok(())
}
