//! `phm`: generate, verify, and transform streams of pseudo-Hadamard
//! matrices.
//!
//! Exit codes: 0 success (and every check passed), 1 I/O or parse failure,
//! 2 usage errors including invalid sizes, 3 semantic failure (a check or
//! precondition did not hold). Matrix data goes to files or stdout; progress
//! and summaries go to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use phm_cli::io::{MatrixKind, MatrixStreamHeader, ReadError, StreamReader, StreamWriter, WriteError, write_stream};
use phm_core::generator::{DiscardSink, MatrixSink, generate, validate_size};
use phm_core::gram::{is_hadamard, is_pseudo_hadamard, is_row_gram_pseudo};
use phm_core::matrix::BinMatrix;
use phm_core::oracle::{brute_force_row_gram, canonicalize};
use phm_core::transform::{
    TransformError, extract_first_generation, find_column_fix, lift_to_hadamard,
    normalize_hadamard,
};
use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "phm",
    version,
    about = "Pseudo-Hadamard matrices of the first generation: exhaustive \
             generation, Gramian verification, and structure-preserving \
             transformations over a plain text stream format"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively generate all size-m matrices with the pseudo row Gramian
    Generate {
        /// Matrix size m, which must be of the form 4q-2
        #[arg(long)]
        size: usize,
        /// Stop after this many matrices
        #[arg(long)]
        limit: Option<u64>,
        /// Where to write the resulting stream
        #[arg(long)]
        output: PathBuf,
        /// Print a progress line to stderr every N matrices
        #[arg(long, value_name = "N")]
        progress_every: Option<u64>,
    },
    /// Check every matrix of a stream against a Gramian predicate
    Verify {
        /// Stream to check
        #[arg(long)]
        input: PathBuf,
        /// Predicate to apply
        #[arg(long, value_enum)]
        mode: VerifyMode,
    },
    /// Lift pseudo-Hadamard matrices to normalized Hadamard matrices
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Normalize Hadamard matrices and extract their first-generation minors
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// For row-Gramian matrices, search for the column fix and print witnesses
    Conjecture {
        #[arg(long)]
        input: PathBuf,
    },
    /// Count the matrices the generator would emit, without storing them
    Count {
        /// Matrix size m, which must be of the form 4q-2
        #[arg(long)]
        size: usize,
        /// Stop counting at this many matrices
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Brute-force cross-check: totals from the independent reference search
    Oracle {
        /// Matrix size m (guarded: small sizes only)
        #[arg(long)]
        size: usize,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum VerifyMode {
    /// Row Gramian matches the pseudo block form
    RowGram,
    /// Both Gramians match: fully pseudo-Hadamard
    Pseudo,
    /// Hadamard in {0,1} presentation
    Hadamard,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error(transparent)]
    Write(#[from] WriteError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn usage(err: impl std::fmt::Display) -> Self {
        CliError::Usage(err.to_string())
    }
}

const SEMANTIC_FAILURE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Generate {
            size,
            limit,
            output,
            progress_every,
        } => cmd_generate(size, limit, &output, progress_every),
        Command::Verify { input, mode } => cmd_verify(&input, mode),
        Command::Lift { input, output } => cmd_lift(&input, &output),
        Command::Extract { input, output } => cmd_extract(&input, &output),
        Command::Conjecture { input } => cmd_conjecture(&input),
        Command::Count { size, limit } => cmd_count(size, limit),
        Command::Oracle { size } => cmd_oracle(size),
    }
}

fn open_input(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| CliError::File {
            path: path.to_path_buf(),
            source,
        })
}

fn create_output(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::File {
            path: path.to_path_buf(),
            source,
        })
}

fn per_minute(count: u64, elapsed: Duration) -> f64 {
    count as f64 * 60.0 / elapsed.as_secs_f64().max(1e-9)
}

struct WriterSink<'w, W: Write> {
    writer: &'w mut StreamWriter<W>,
    error: Option<WriteError>,
    start: Instant,
}

impl<W: Write> MatrixSink for WriterSink<'_, W> {
    fn emit(&mut self, matrix: &BinMatrix) -> ControlFlow<()> {
        match self.writer.write_matrix(matrix) {
            Ok(()) => ControlFlow::Continue(()),
            Err(err) => {
                self.error = Some(err);
                ControlFlow::Break(())
            }
        }
    }

    fn progress(&mut self, emitted: u64) {
        let elapsed = self.start.elapsed();
        eprintln!(
            "{emitted} matrices in {:.1} s ({:.0} matrices/minute)",
            elapsed.as_secs_f64(),
            per_minute(emitted, elapsed)
        );
    }
}

fn cmd_generate(
    size: usize,
    limit: Option<u64>,
    output: &Path,
    progress_every: Option<u64>,
) -> Result<ExitCode, CliError> {
    validate_size(size).map_err(CliError::usage)?;
    let mut writer = StreamWriter::new(
        create_output(output)?,
        &MatrixStreamHeader::new(size, MatrixKind::RowGram),
    )?;
    let start = Instant::now();
    let mut sink = WriterSink {
        writer: &mut writer,
        error: None,
        start,
    };
    let report = generate(size, limit, progress_every, &mut sink).map_err(CliError::usage)?;
    if let Some(err) = sink.error {
        return Err(err.into());
    }
    writer.finish()?;
    let elapsed = start.elapsed();
    eprintln!(
        "produced {} matrices in {:.2} s ({:.0} matrices/minute){}",
        report.matrices_emitted,
        elapsed.as_secs_f64(),
        per_minute(report.matrices_emitted, elapsed),
        if report.limit_reached { ", limit reached" } else { "" }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(input: &Path, mode: VerifyMode) -> Result<ExitCode, CliError> {
    let predicate: fn(&BinMatrix) -> bool = match mode {
        VerifyMode::RowGram => is_row_gram_pseudo,
        VerifyMode::Pseudo => is_pseudo_hadamard,
        VerifyMode::Hadamard => is_hadamard,
    };
    let mut reader = StreamReader::new(open_input(input)?)?;
    let mut checked = 0u64;
    let mut failed = 0u64;
    for (index, item) in (&mut reader).enumerate() {
        let matrix = item?;
        let ok = predicate(&matrix);
        checked += 1;
        if !ok {
            failed += 1;
        }
        println!("matrix {}: {}", index + 1, if ok { "pass" } else { "FAIL" });
    }
    eprintln!("checked {checked}, passed {}, failed {failed}", checked - failed);
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(SEMANTIC_FAILURE)
    })
}

// Applies `op` to every matrix of the input stream; only when every single
// one succeeds is the output stream written.
fn transform_stream(
    output: &Path,
    out_size: usize,
    out_kind: MatrixKind,
    precondition: &str,
    op: impl Fn(&BinMatrix) -> Result<BinMatrix, TransformError>,
    matrices: Vec<BinMatrix>,
) -> Result<ExitCode, CliError> {
    let mut transformed = Vec::with_capacity(matrices.len());
    let mut failures: Vec<usize> = Vec::new();
    for (index, matrix) in matrices.iter().enumerate() {
        match op(matrix) {
            Ok(out) => transformed.push(out),
            Err(_) => failures.push(index + 1),
        }
    }
    if !failures.is_empty() {
        let list: Vec<String> = failures.iter().map(usize::to_string).collect();
        eprintln!(
            "{} of {} matrices are not {precondition}: {}",
            failures.len(),
            matrices.len(),
            list.join(" ")
        );
        return Ok(ExitCode::from(SEMANTIC_FAILURE));
    }
    let count = write_stream(
        create_output(output)?,
        &MatrixStreamHeader::new(out_size, out_kind),
        &transformed,
    )?;
    eprintln!("wrote {count} matrices");
    Ok(ExitCode::SUCCESS)
}

fn cmd_lift(input: &Path, output: &Path) -> Result<ExitCode, CliError> {
    let (header, matrices) = phm_cli::io::read_stream(open_input(input)?)?;
    transform_stream(
        output,
        header.m + 1,
        MatrixKind::Hadamard,
        "pseudo-Hadamard",
        lift_to_hadamard,
        matrices,
    )
}

fn cmd_extract(input: &Path, output: &Path) -> Result<ExitCode, CliError> {
    let (header, matrices) = phm_cli::io::read_stream(open_input(input)?)?;
    if header.m < 2 {
        return Err(CliError::Usage(
            "cannot extract minors from a size-1 stream".into(),
        ));
    }
    transform_stream(
        output,
        header.m - 1,
        MatrixKind::Pseudo,
        "Hadamard",
        |mat| normalize_hadamard(mat).and_then(|n| extract_first_generation(&n)),
        matrices,
    )
}

fn cmd_conjecture(input: &Path) -> Result<ExitCode, CliError> {
    let (_, matrices) = phm_cli::io::read_stream(open_input(input)?)?;
    let bad: Vec<String> = matrices
        .iter()
        .enumerate()
        .filter(|(_, m)| !is_row_gram_pseudo(m))
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    if !bad.is_empty() {
        eprintln!(
            "{} of {} matrices do not match the row Gramian: {}",
            bad.len(),
            matrices.len(),
            bad.join(" ")
        );
        return Ok(ExitCode::from(SEMANTIC_FAILURE));
    }
    let mut witnesses = 0u64;
    for (index, matrix) in matrices.iter().enumerate() {
        match find_column_fix(matrix).expect("row Gramian checked above") {
            Some(p) => {
                witnesses += 1;
                let image: Vec<String> = p.image().iter().map(usize::to_string).collect();
                println!("matrix {}: witness {}", index + 1, image.join(" "));
            }
            None => println!("matrix {}: NONE", index + 1),
        }
    }
    eprintln!("witnesses {witnesses} of {}", matrices.len());
    Ok(if witnesses as usize == matrices.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(SEMANTIC_FAILURE)
    })
}

fn cmd_count(size: usize, limit: Option<u64>) -> Result<ExitCode, CliError> {
    validate_size(size).map_err(CliError::usage)?;
    let start = Instant::now();
    let report = generate(size, limit, None, &mut DiscardSink).map_err(CliError::usage)?;
    println!("{}", report.matrices_emitted);
    eprintln!(
        "counted in {:.2} s{}",
        start.elapsed().as_secs_f64(),
        if report.limit_reached { ", limit reached" } else { "" }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(size: usize) -> Result<ExitCode, CliError> {
    let found = brute_force_row_gram(size).map_err(CliError::usage)?;
    let canonical: BTreeSet<BinMatrix> = found
        .iter()
        .map(|m| canonicalize(m).expect("oracle output matches the row Gramian"))
        .collect();
    println!("total {} canonical {}", found.len(), canonical.len());
    Ok(ExitCode::SUCCESS)
}
