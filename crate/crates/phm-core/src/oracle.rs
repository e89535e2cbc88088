//! Brute-force reference search, independent of the class-based generator.
//!
//! The oracle enumerates complete candidate row pools and backtracks over
//! them with nothing but pairwise scalar-product checks, so it shares no
//! search logic with [`crate::generator`]. It exists to cross-check the
//! generator on small sizes and is guarded accordingly.

use crate::gram::is_row_gram_pseudo;
use crate::matrix::{BinMatrix, BitRow};
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

/// Largest size the brute force accepts; the pools grow combinatorially.
pub const MAX_ORACLE_SIZE: usize = 10;

/// Errors from the oracle entry points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// The requested size is not of the form 4q−2.
    InvalidSize(usize),
    /// The size has the right form but exceeds [`MAX_ORACLE_SIZE`].
    SizeBeyondGuard(usize),
    /// Canonicalization input whose row Gramian does not match the block form.
    NotRowGram,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OracleError::InvalidSize(m) => write!(
                f,
                "m={m} is incorrect size for generation one pseudo-Hadamard matrices"
            ),
            OracleError::SizeBeyondGuard(m) => {
                write!(f, "m={m} exceeds the brute-force guard {MAX_ORACLE_SIZE}")
            }
            OracleError::NotRowGram => {
                f.write_str("input's row Gramian does not match the pseudo block form")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// Every width-`m` row of exactly `weight` ones, in ascending order of the
/// packed row word.
pub struct CandidateRowPool {
    pub weight: usize,
    pub rows: Vec<BitRow>,
}

impl CandidateRowPool {
    /// Builds the pool for rows of `width <= 63` columns.
    pub fn new(width: usize, weight: usize) -> Self {
        assert!(width > 0 && width < 64, "width must be in 1..=63");
        assert!(weight <= width, "weight cannot exceed the width");
        let mut rows = Vec::new();
        if weight == 0 {
            rows.push(BitRow::zeros(width));
            return CandidateRowPool { weight, rows };
        }
        // Gosper's hack: step to the next-larger word with the same popcount.
        let mut v: u64 = (1 << weight) - 1;
        while v < (1 << width) {
            rows.push(BitRow::from_word(width, v));
            let t = v | (v - 1);
            let low = !t & (!t).wrapping_neg();
            v = (t + 1) | ((low - 1) >> (v.trailing_zeros() + 1));
        }
        CandidateRowPool { weight, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

struct BruteForce<'p, F> {
    m: usize,
    q: usize,
    light: &'p [BitRow],
    heavy: &'p [BitRow],
    rows: Vec<BitRow>,
    visit: F,
}

impl<F: FnMut(&BinMatrix) -> ControlFlow<()>> BruteForce<'_, F> {
    fn search(&mut self) -> ControlFlow<()> {
        let i = self.rows.len() + 1; // 1-based index of the row being chosen
        if i > self.m {
            let matrix = BinMatrix::from_bit_rows(&self.rows);
            debug_assert!(is_row_gram_pseudo(&matrix));
            return (self.visit)(&matrix);
        }
        let leading = 2 * self.q - 1;
        let pool = if i <= leading { self.light } else { self.heavy };
        'candidate: for row in pool {
            for (j, prev) in self.rows.iter().enumerate() {
                let both_leading = i <= leading && j < leading;
                let target = if both_leading { self.q - 1 } else { self.q };
                if prev.dot(row) != target {
                    continue 'candidate;
                }
            }
            self.rows.push(row.clone());
            let flow = self.search();
            self.rows.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn check_size(m: usize) -> Result<usize, OracleError> {
    if m < 2 || m % 4 != 2 {
        return Err(OracleError::InvalidSize(m));
    }
    if m > MAX_ORACLE_SIZE {
        return Err(OracleError::SizeBeyondGuard(m));
    }
    Ok((m + 2) / 4)
}

/// Visits every size-`m` matrix whose row Gramian matches the pseudo block
/// form, in ascending row-word order, depth first. `visit` may break to
/// stop early.
pub fn for_each_row_gram<F>(m: usize, visit: F) -> Result<(), OracleError>
where
    F: FnMut(&BinMatrix) -> ControlFlow<()>,
{
    let q = check_size(m)?;
    let light = CandidateRowPool::new(m, 2 * q - 1);
    let heavy = CandidateRowPool::new(m, 2 * q);
    let mut search = BruteForce {
        m,
        q,
        light: &light.rows,
        heavy: &heavy.rows,
        rows: Vec::with_capacity(m),
        visit,
    };
    let _ = search.search();
    Ok(())
}

/// Collects every size-`m` matrix whose row Gramian matches the pseudo
/// block form. Feasible for m ≤ 6; size 10 already yields billions, use
/// [`for_each_row_gram`] to stream those.
pub fn brute_force_row_gram(m: usize) -> Result<Vec<BinMatrix>, OracleError> {
    let mut out = Vec::new();
    for_each_row_gram(m, |matrix| {
        out.push(matrix.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The canonical representative of `mat` under column permutation: columns
/// stably reordered so that, reading rows top to bottom, zeros precede ones
/// inside every group of columns still tied.
///
/// Two matrices with matching row Gramians are column permutations of each
/// other exactly when they canonicalize identically, so this keys the
/// comparison between oracle output and the generator's representatives.
pub fn canonicalize(mat: &BinMatrix) -> Result<BinMatrix, OracleError> {
    if !is_row_gram_pseudo(mat) {
        return Err(OracleError::NotRowGram);
    }
    let m = mat.size();
    let mut order: Vec<usize> = (0..m).collect();
    let mut spans: Vec<(usize, usize)> = alloc::vec![(0, m)];
    let mut scratch: Vec<usize> = Vec::with_capacity(m);
    for i in 0..m {
        let mut next = Vec::with_capacity(spans.len() * 2);
        for &(lo, hi) in &spans {
            scratch.clear();
            scratch.extend(order[lo..hi].iter().copied().filter(|&j| !mat.get(i, j)));
            let zeros = scratch.len();
            scratch.extend(order[lo..hi].iter().copied().filter(|&j| mat.get(i, j)));
            order[lo..hi].copy_from_slice(&scratch);
            if zeros > 0 {
                next.push((lo, lo + zeros));
            }
            if zeros < hi - lo {
                next.push((lo + zeros, hi));
            }
        }
        spans = next;
    }
    Ok(BinMatrix::from_fn(m, |i, j| mat.get(i, order[j])))
}
