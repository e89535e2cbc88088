//! Bit-packed square {0,1} matrices and the integer matrices their Gramians
//! land in.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD_BITS: usize = 64;

/// A fixed-width row of zeros and ones, packed 64 columns per word.
///
/// Unused high bits of the last word are always zero, so equality, hashing,
/// and popcounts can work on whole words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitRow {
    width: usize,
    words: Vec<u64>,
}

impl BitRow {
    /// An all-zero row of `width` columns. `width` must be positive.
    pub fn zeros(width: usize) -> Self {
        assert!(width > 0, "row width must be positive");
        BitRow {
            width,
            words: vec![0; width.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a row of `width <= 64` columns from the low bits of `word`;
    /// bit j of `word` becomes column j.
    pub fn from_word(width: usize, word: u64) -> Self {
        assert!(width > 0 && width <= WORD_BITS, "width must be in 1..=64");
        debug_assert!(
            width == WORD_BITS || word >> width == 0,
            "stray bits past the row width"
        );
        BitRow {
            width,
            words: vec![word],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, col: usize) -> bool {
        assert!(col < self.width, "column {col} out of range");
        (self.words[col / WORD_BITS] >> (col % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, col: usize, value: bool) {
        assert!(col < self.width, "column {col} out of range");
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            self.words[col / WORD_BITS] |= mask;
        } else {
            self.words[col / WORD_BITS] &= !mask;
        }
    }

    /// Number of ones in the row.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Scalar product with `other`: the number of columns where both rows
    /// hold a one. Both rows must have the same width.
    pub fn dot(&self, other: &BitRow) -> usize {
        assert_eq!(self.width, other.width, "rows differ in width");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for col in 0..self.width {
            f.write_str(if self.get(col) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow({self})")
    }
}

/// A square matrix over {0,1} with bit-packed rows.
///
/// Each row occupies `stride` consecutive words of `bits`, so the scalar
/// product of two rows is a word-wise AND plus popcount: O(m/64) per Gram
/// entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinMatrix {
    m: usize,
    stride: usize,
    bits: Vec<u64>,
}

/// Why a list of text rows failed to parse as a square {0,1} matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParseMatrixError {
    /// No rows at all.
    Empty,
    /// Row `row` (0-based) has `got` columns, but the row count demands `expected`.
    NotSquare {
        row: usize,
        expected: usize,
        got: usize,
    },
    /// Row `row`, column `col` holds a character other than '0' or '1'.
    BadCharacter { row: usize, col: usize },
}

impl fmt::Display for ParseMatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ParseMatrixError::Empty => f.write_str("matrix has no rows"),
            ParseMatrixError::NotSquare { row, expected, got } => {
                write!(f, "row {row} has {got} columns, expected {expected}")
            }
            ParseMatrixError::BadCharacter { row, col } => {
                write!(f, "row {row}, column {col}: character outside {{0,1}}")
            }
        }
    }
}

impl core::error::Error for ParseMatrixError {}

impl BinMatrix {
    /// The all-zero matrix of size `m`. `m` must be positive.
    pub fn zeros(m: usize) -> Self {
        assert!(m > 0, "matrix size must be positive");
        let stride = m.div_ceil(WORD_BITS);
        BinMatrix {
            m,
            stride,
            bits: vec![0; m * stride],
        }
    }

    /// The identity matrix of size `m`.
    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, |i, j| i == j)
    }

    /// Builds an `m` by `m` matrix whose (i, j) entry is `f(i, j)`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                if f(i, j) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Stacks `rows` into a square matrix; every row's width must equal the
    /// row count.
    pub fn from_bit_rows(rows: &[BitRow]) -> Self {
        let m = rows.len();
        assert!(m > 0, "matrix size must be positive");
        let mut out = Self::zeros(m);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.width(), m, "row {i} width does not match row count");
            out.bits[i * out.stride..(i + 1) * out.stride].copy_from_slice(row.words());
        }
        out
    }

    /// Parses rows of '0'/'1' characters, one string per row.
    pub fn parse_rows(lines: &[&str]) -> Result<Self, ParseMatrixError> {
        let m = lines.len();
        if m == 0 {
            return Err(ParseMatrixError::Empty);
        }
        let mut out = Self::zeros(m);
        for (i, line) in lines.iter().enumerate() {
            let mut cols = 0;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => {
                        if j < m {
                            out.set(i, j, true);
                        }
                    }
                    _ => return Err(ParseMatrixError::BadCharacter { row: i, col: j }),
                }
                cols += 1;
            }
            if cols != m {
                return Err(ParseMatrixError::NotSquare {
                    row: i,
                    expected: m,
                    got: cols,
                });
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.m && col < self.m, "index out of range");
        (self.bits[row * self.stride + col / WORD_BITS] >> (col % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.m && col < self.m, "index out of range");
        let word = &mut self.bits[row * self.stride + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    /// The packed words of row `i`.
    pub fn row_words(&self, i: usize) -> &[u64] {
        assert!(i < self.m, "row {i} out of range");
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Number of ones in row `i`.
    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Scalar product of rows `i` and `j`.
    pub fn row_dot(&self, i: usize, j: usize) -> usize {
        self.row_words(i)
            .iter()
            .zip(self.row_words(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Number of ones in column `j`.
    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.m).filter(|&i| self.get(i, j)).count()
    }

    /// Row `i` as its own packed row.
    pub fn row(&self, i: usize) -> BitRow {
        BitRow {
            width: self.m,
            words: self.row_words(i).to_vec(),
        }
    }

    /// Row `i` rendered as a string of '0'/'1' characters.
    pub fn row_to_string(&self, i: usize) -> String {
        let mut s = String::with_capacity(self.m);
        for j in 0..self.m {
            s.push(if self.get(i, j) { '1' } else { '0' });
        }
        s
    }

    pub fn transpose(&self) -> BinMatrix {
        Self::from_fn(self.m, |i, j| self.get(j, i))
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str(&self.row_to_string(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinMatrix[")?;
        for i in 0..self.m {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.row_to_string(i))?;
        }
        f.write_str("]")
    }
}

/// A square matrix of non-negative integers, used for Gram matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<usize>,
}

impl IntMatrix {
    /// The all-zero matrix of size `n`. `n` must be positive.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix size must be positive");
        IntMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    /// Builds an `n` by `n` matrix whose (i, j) entry is `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = f(i, j);
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        assert!(row < self.n && col < self.n, "index out of range");
        self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: usize) {
        assert!(row < self.n && col < self.n, "index out of range");
        self.entries[row * self.n + col] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Sum of the entries in row `i`.
    pub fn row_sum(&self, i: usize) -> usize {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{:?}", (0..self.n).map(|j| self.get(i, j)).collect::<Vec<_>>())?;
        }
        f.write_str("]")
    }
}
