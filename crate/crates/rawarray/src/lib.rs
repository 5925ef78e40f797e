//! Reading, writing and converting RawArray files.
//!
//! Format rules and element decoding live in [`rawarray_core`]; this crate
//! adds file IO, memory mapping, format converters, the `ra` command and
//! benchmarks.

pub mod bench;
pub mod cli;
pub mod convert;
pub mod error;
pub mod fixtures;
pub mod io;

pub use error::{Error, Result};
pub use io::*;
pub use rawarray_core as format;
pub use rawarray_core::{ElementKind, Elements, Header, TypeCode};
