//! `ra`: inspect, dump, create, convert and compare RawArray files.
//!
//! Exit status is 0 on success, 1 for IO failures (or differing files in
//! `diff`), and 2 for malformed input.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rawarray::cli::{self, CreateSource, DumpFormat};
use rawarray::convert::{self, SourceFormat, TargetFormat};
use rawarray::{write_array, Error, Result};

#[derive(Parser)]
#[command(name = "ra", version, about = "Inspect and manipulate RawArray files")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the decoded header.
    Info { file: PathBuf },
    /// Print the file contents.
    Dump {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DumpFormat::Auto)]
        format: DumpFormat,
        /// Maximum number of items to print.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Write a new file from values, raw bytes or a fill value.
    Create {
        out: PathBuf,
        /// struct, int, uint, float, complex or a numeric code.
        #[arg(long)]
        eltype: String,
        #[arg(long)]
        elbyte: u64,
        /// Comma-separated extents, first axis fastest. Omit for a scalar.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<u64>,
        /// Values as text; `-` reads standard input.
        #[arg(long, group = "source", allow_hyphen_values = true)]
        text: Option<String>,
        /// File whose bytes become the data segment verbatim.
        #[arg(long, group = "source")]
        raw: Option<PathBuf>,
        /// Single value repeated over every element.
        #[arg(long, group = "source", allow_hyphen_values = true)]
        fill: Option<String>,
        #[arg(long)]
        big_endian: bool,
    },
    /// Convert between RawArray and other formats.
    Convert {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum)]
        from: SourceFormat,
        #[arg(long, value_enum, default_value_t = TargetFormat::Ra)]
        to: TargetFormat,
    },
    /// Compare two files by content; byte order is normalized first.
    Diff {
        a: PathBuf,
        b: PathBuf,
        /// Also compare the metadata trailers.
        #[arg(long)]
        metadata: bool,
    },
}

fn run(command: Command) -> Result<ExitCode> {
    let mut stdout = std::io::stdout().lock();
    match command {
        Command::Info { file } => stdout.write_all(cli::info(&file)?.as_bytes())?,
        Command::Dump { file, format, limit } => stdout.write_all(cli::dump(&file, format, limit)?.as_bytes())?,
        Command::Create { out, eltype, elbyte, dims, text, raw, fill, big_endian } => {
            let source = match (text, raw, fill) {
                (Some(t), _, _) if t == "-" => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    CreateSource::Text(s)
                }
                (Some(t), _, _) => CreateSource::Text(t),
                (_, Some(p), _) => CreateSource::Raw(std::fs::read(p)?),
                (_, _, Some(v)) => CreateSource::Fill(v),
                _ => return Err(Error::Parse("one of --text, --raw or --fill is required".into())),
            };
            let arr = cli::build_array(cli::parse_type(&eltype)?, elbyte, &dims, &source, big_endian)?;
            write_array(&out, &arr)?;
        }
        Command::Convert { input, output, from, to } => convert::convert(&input, &output, from, to)?,
        Command::Diff { a, b, metadata } => {
            if let Some(d) = cli::diff(&a, &b, metadata)? {
                writeln!(stdout, "{d}")?;
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_malformed() { 2 } else { 1 })
        }
    }
}
