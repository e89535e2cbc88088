//! Bit-exact text streams of square {0,1} matrices.
//!
//! A stream is one header line `PHM v1 m=<size> kind=<tag>` followed by zero
//! or more matrices, each written as `m` lines of `m` characters from {0,1}
//! and one blank line (after the last matrix too). Every line ends with a
//! single LF and carries no other whitespace. Writing the same matrices
//! always produces the same bytes, and the reader rejects anything the
//! writer would not emit, naming the offending 1-based line.

use phm_core::matrix::BinMatrix;
use std::io::{BufRead, Write};
use thiserror::Error;

/// The only stream format version in existence.
pub const FORMAT_VERSION: u32 = 1;

/// What the stream's producer claims about its matrices. The tag is carried
/// verbatim; readers decide whether to trust or re-verify it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixKind {
    /// Row Gramian matches the pseudo block form; columns may be scrambled.
    RowGram,
    /// Fully pseudo-Hadamard: both Gramians match.
    Pseudo,
    /// Hadamard in {0,1} presentation.
    Hadamard,
    /// No claim attached.
    Unverified,
}

impl MatrixKind {
    pub fn tag(self) -> &'static str {
        match self {
            MatrixKind::RowGram => "row-gram",
            MatrixKind::Pseudo => "pseudo",
            MatrixKind::Hadamard => "hadamard",
            MatrixKind::Unverified => "unverified",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "row-gram" => MatrixKind::RowGram,
            "pseudo" => MatrixKind::Pseudo,
            "hadamard" => MatrixKind::Hadamard,
            "unverified" => MatrixKind::Unverified,
            _ => return None,
        })
    }
}

/// The parsed header line of a stream.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MatrixStreamHeader {
    pub version: u32,
    pub m: usize,
    pub kind: MatrixKind,
}

impl MatrixStreamHeader {
    /// A current-version header for size-`m` matrices. `m` must be positive.
    pub fn new(m: usize, kind: MatrixKind) -> Self {
        assert!(m > 0, "matrix size must be positive");
        MatrixStreamHeader {
            version: FORMAT_VERSION,
            m,
            kind,
        }
    }
}

/// Why reading a stream failed. Line numbers are 1-based; the header is
/// line 1.
#[derive(Debug, Error)]
pub enum ReadError {
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("line {line}: unsupported format version {found:?}")]
    UnsupportedVersion { line: usize, found: String },
    #[error("line {line}: character {found:?} outside {{0,1}}")]
    BadCharacter { line: usize, found: char },
    #[error("line {line}: row has {got} columns, expected {expected}")]
    RaggedRow {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: matrix truncated after {rows} of {expected} rows")]
    Truncated {
        line: usize,
        rows: usize,
        expected: usize,
    },
    #[error("line {line}: expected a blank line after the matrix")]
    MissingSeparator { line: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Why writing a stream failed.
#[derive(Debug, Error)]
pub enum WriteError {
    #[error("matrix {index} has size {got}, stream expects {expected}")]
    SizeMismatch {
        index: u64,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Incremental writer: emits the header up front, then one matrix at a time.
pub struct StreamWriter<W: Write> {
    inner: W,
    m: usize,
    written: u64,
}

impl<W: Write> StreamWriter<W> {
    pub fn new(mut inner: W, header: &MatrixStreamHeader) -> Result<Self, WriteError> {
        writeln!(
            inner,
            "PHM v{} m={} kind={}",
            header.version,
            header.m,
            header.kind.tag()
        )?;
        Ok(StreamWriter {
            inner,
            m: header.m,
            written: 0,
        })
    }

    pub fn write_matrix(&mut self, mat: &BinMatrix) -> Result<(), WriteError> {
        if mat.size() != self.m {
            return Err(WriteError::SizeMismatch {
                index: self.written,
                expected: self.m,
                got: mat.size(),
            });
        }
        for i in 0..self.m {
            writeln!(self.inner, "{}", mat.row_to_string(i))?;
        }
        writeln!(self.inner)?;
        self.written += 1;
        Ok(())
    }

    /// Matrices written so far.
    pub fn written(&self) -> u64 {
        self.written
    }

    /// Flushes and hands the underlying writer back.
    pub fn finish(mut self) -> Result<W, WriteError> {
        self.inner.flush()?;
        Ok(self.inner)
    }
}

/// Writes a whole stream in one call and returns the matrix count.
pub fn write_stream<W: Write>(
    inner: W,
    header: &MatrixStreamHeader,
    matrices: &[BinMatrix],
) -> Result<u64, WriteError> {
    let mut writer = StreamWriter::new(inner, header)?;
    for mat in matrices {
        writer.write_matrix(mat)?;
    }
    let count = writer.written();
    writer.finish()?;
    Ok(count)
}

/// Incremental reader: parses the header eagerly, then yields matrices as an
/// iterator. Stops permanently after the first error.
pub struct StreamReader<R: BufRead> {
    inner: R,
    header: MatrixStreamHeader,
    line: usize,
    done: bool,
}

impl<R: BufRead> StreamReader<R> {
    pub fn new(mut inner: R) -> Result<Self, ReadError> {
        let mut line = 0;
        let text = next_line(&mut inner, &mut line)?
            .ok_or(ReadError::MalformedHeader { line: 1 })?;
        let header = parse_header(&text, line)?;
        Ok(StreamReader {
            inner,
            header,
            line,
            done: false,
        })
    }

    pub fn header(&self) -> &MatrixStreamHeader {
        &self.header
    }

    fn read_matrix(&mut self) -> Result<Option<BinMatrix>, ReadError> {
        let m = self.header.m;
        let Some(first) = next_line(&mut self.inner, &mut self.line)? else {
            return Ok(None);
        };
        let mut rows: Vec<String> = Vec::with_capacity(m);
        let mut text = first;
        loop {
            check_row(&text, m, self.line)?;
            rows.push(text);
            if rows.len() == m {
                break;
            }
            text = next_line(&mut self.inner, &mut self.line)?.ok_or(ReadError::Truncated {
                line: self.line + 1,
                rows: rows.len(),
                expected: m,
            })?;
        }
        match next_line(&mut self.inner, &mut self.line)? {
            Some(sep) if sep.is_empty() => {}
            Some(_) => return Err(ReadError::MissingSeparator { line: self.line }),
            None => return Err(ReadError::MissingSeparator { line: self.line + 1 }),
        }
        Ok(Some(BinMatrix::from_fn(m, |i, j| {
            rows[i].as_bytes()[j] == b'1'
        })))
    }
}

impl<R: BufRead> Iterator for StreamReader<R> {
    type Item = Result<BinMatrix, ReadError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_matrix() {
            Ok(Some(mat)) => Some(Ok(mat)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Reads a whole stream into memory.
pub fn read_stream<R: BufRead>(
    inner: R,
) -> Result<(MatrixStreamHeader, Vec<BinMatrix>), ReadError> {
    let mut reader = StreamReader::new(inner)?;
    let header = *reader.header();
    let mut matrices = Vec::new();
    for item in &mut reader {
        matrices.push(item?);
    }
    Ok((header, matrices))
}

// One line with its single trailing LF removed; anything else (a CR, say)
// stays visible to the caller's validation. None at end of input.
fn next_line<R: BufRead>(inner: &mut R, line: &mut usize) -> Result<Option<String>, ReadError> {
    let mut buf = String::new();
    if inner.read_line(&mut buf)? == 0 {
        return Ok(None);
    }
    *line += 1;
    if buf.ends_with('\n') {
        buf.pop();
    }
    Ok(Some(buf))
}

fn parse_header(text: &str, line: usize) -> Result<MatrixStreamHeader, ReadError> {
    let malformed = || ReadError::MalformedHeader { line };
    let tokens: Vec<&str> = text.split(' ').collect();
    if tokens.len() != 4 || tokens[0] != "PHM" {
        return Err(malformed());
    }
    match tokens[1].strip_prefix('v').and_then(|v| v.parse::<u32>().ok()) {
        Some(FORMAT_VERSION) => {}
        _ => {
            return Err(ReadError::UnsupportedVersion {
                line,
                found: tokens[1].to_string(),
            });
        }
    }
    let m: usize = tokens[2]
        .strip_prefix("m=")
        .and_then(|v| v.parse().ok())
        .filter(|&v| v > 0)
        .ok_or_else(malformed)?;
    let kind = tokens[3]
        .strip_prefix("kind=")
        .and_then(MatrixKind::from_tag)
        .ok_or_else(malformed)?;
    Ok(MatrixStreamHeader {
        version: FORMAT_VERSION,
        m,
        kind,
    })
}

fn check_row(text: &str, expected: usize, line: usize) -> Result<(), ReadError> {
    let mut got = 0;
    for ch in text.chars() {
        if ch != '0' && ch != '1' {
            return Err(ReadError::BadCharacter { line, found: ch });
        }
        got += 1;
    }
    if got != expected {
        return Err(ReadError::RaggedRow {
            line,
            expected,
            got,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(rows: &[&str]) -> BinMatrix {
        BinMatrix::parse_rows(rows).unwrap()
    }

    fn read_all(bytes: &[u8]) -> Result<(MatrixStreamHeader, Vec<BinMatrix>), ReadError> {
        read_stream(bytes)
    }

    #[test]
    fn writes_the_exact_bytes() {
        let mut out = Vec::new();
        let header = MatrixStreamHeader::new(2, MatrixKind::RowGram);
        write_stream(&mut out, &header, &[parse(&["01", "11"])]).unwrap();
        assert_eq!(out, b"PHM v1 m=2 kind=row-gram\n01\n11\n\n");
    }

    #[test]
    fn round_trips_matrices_and_header() {
        let matrices = vec![
            parse(&["01", "11"]),
            parse(&["10", "11"]),
            parse(&["11", "00"]),
        ];
        let header = MatrixStreamHeader::new(2, MatrixKind::Unverified);
        let mut bytes = Vec::new();
        write_stream(&mut bytes, &header, &matrices).unwrap();
        let (back_header, back) = read_all(&bytes).unwrap();
        assert_eq!(back_header, header);
        assert_eq!(back, matrices);
    }

    #[test]
    fn empty_streams_carry_only_the_header() {
        let mut bytes = Vec::new();
        write_stream(&mut bytes, &MatrixStreamHeader::new(5, MatrixKind::Hadamard), &[]).unwrap();
        assert_eq!(bytes, b"PHM v1 m=5 kind=hadamard\n");
        let (header, matrices) = read_all(&bytes).unwrap();
        assert_eq!(header.m, 5);
        assert_eq!(header.kind, MatrixKind::Hadamard);
        assert!(matrices.is_empty());
    }

    #[test]
    fn writer_rejects_foreign_sizes() {
        let mut writer =
            StreamWriter::new(Vec::new(), &MatrixStreamHeader::new(3, MatrixKind::Unverified))
                .unwrap();
        let err = writer.write_matrix(&parse(&["01", "11"])).unwrap_err();
        assert!(matches!(
            err,
            WriteError::SizeMismatch {
                index: 0,
                expected: 3,
                got: 2
            }
        ));
    }

    #[test]
    fn header_errors_name_line_one() {
        for bad in [
            &b"HMM v1 m=2 kind=pseudo\n"[..],
            b"PHM v1 m=2 kind=pseudo extra\n",
            b"PHM v1 m=2\n",
            b"PHM v1 m=0 kind=pseudo\n",
            b"PHM v1 m=x kind=pseudo\n",
            b"PHM v1 m=2 kind=maybe\n",
            b"PHM  v1 m=2 kind=pseudo\n",
            b"",
        ] {
            assert!(
                matches!(
                    read_all(bad),
                    Err(ReadError::MalformedHeader { line: 1 })
                ),
                "input {:?}",
                String::from_utf8_lossy(bad)
            );
        }
        assert!(matches!(
            read_all(b"PHM v2 m=2 kind=pseudo\n"),
            Err(ReadError::UnsupportedVersion { line: 1, found }) if found == "v2"
        ));
    }

    #[test]
    fn body_errors_name_their_lines() {
        let err = read_all(b"PHM v1 m=2 kind=unverified\n01\n21\n\n").unwrap_err();
        assert!(matches!(err, ReadError::BadCharacter { line: 3, found: '2' }));

        let err = read_all(b"PHM v1 m=2 kind=unverified\n01\n110\n\n").unwrap_err();
        assert!(matches!(
            err,
            ReadError::RaggedRow {
                line: 3,
                expected: 2,
                got: 3
            }
        ));

        let err = read_all(b"PHM v1 m=2 kind=unverified\n01\n").unwrap_err();
        assert!(matches!(
            err,
            ReadError::Truncated {
                line: 3,
                rows: 1,
                expected: 2
            }
        ));

        // Missing blank line between matrices.
        let err = read_all(b"PHM v1 m=2 kind=unverified\n01\n11\n01\n11\n\n").unwrap_err();
        assert!(matches!(err, ReadError::MissingSeparator { line: 4 }));

        // Missing final separator.
        let err = read_all(b"PHM v1 m=2 kind=unverified\n01\n11\n").unwrap_err();
        assert!(matches!(err, ReadError::MissingSeparator { line: 4 }));

        // CR in the body surfaces as a bad character.
        let err = read_all(b"PHM v1 m=2 kind=unverified\n01\r\n11\r\n\r\n").unwrap_err();
        assert!(matches!(err, ReadError::BadCharacter { line: 2, found: '\r' }));
    }

    #[test]
    fn reader_streams_incrementally_and_stops_after_errors() {
        let bytes = b"PHM v1 m=2 kind=unverified\n01\n11\n\n10\n1x\n\n";
        let mut reader = StreamReader::new(&bytes[..]).unwrap();
        assert_eq!(reader.header().m, 2);
        assert_eq!(reader.next().unwrap().unwrap(), parse(&["01", "11"]));
        assert!(matches!(
            reader.next(),
            Some(Err(ReadError::BadCharacter { line: 6, found: 'x' }))
        ));
        assert!(reader.next().is_none());
    }

    proptest! {
        #[test]
        fn random_streams_round_trip(
            rows in proptest::collection::vec(0u64..256, 1..=8),
            count in 0usize..4,
        ) {
            let m = rows.len();
            let mat = BinMatrix::from_fn(m, |i, j| (rows[i] >> j) & 1 == 1);
            let matrices: Vec<BinMatrix> = (0..count).map(|_| mat.clone()).collect();
            let header = MatrixStreamHeader::new(m, MatrixKind::Unverified);
            let mut bytes = Vec::new();
            write_stream(&mut bytes, &header, &matrices).unwrap();
            let (back_header, back) = read_stream(&bytes[..]).unwrap();
            prop_assert_eq!(back_header, header);
            prop_assert_eq!(back, matrices);
        }
    }
}
