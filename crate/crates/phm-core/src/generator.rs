//! Exhaustive depth-first generation of all matrices whose row Gramian
//! matches the pseudo-Hadamard block form, one representative per column
//! arrangement.
//!
//! Rows are placed top to bottom. Columns that have received identical bits
//! in every row placed so far are interchangeable, so the search keeps them
//! grouped into classes (contiguous column spans, tracked by
//! [`ColumnClassPartition`]) and branches only on how many ones each class
//! receives in the next row, never on which columns inside a class. Within a
//! class the ones always occupy the rightmost columns. Placing a row splits
//! each class into its zero and one halves, which keeps every class span
//! contiguous as the search deepens.
//!
//! A candidate allocation for row i must hit the row's weight target and,
//! for every already-placed row j, put exactly the target scalar product
//! worth of ones into the classes lying under the ones of row j. Those are
//! the only constraints: any full set of rows built this way satisfies the
//! row-Gramian predicate by construction.

use crate::gram::is_row_gram_pseudo;
use crate::matrix::{BinMatrix, BitRow};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::iter::FusedIterator;
use core::ops::ControlFlow;

/// Largest size `generate` accepts; class signatures are u128 bit histories.
pub const MAX_GENERATE_SIZE: usize = 128;

/// Errors from the generator and its building blocks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenError {
    /// The requested size is not of the form 4q−2.
    InvalidSize(usize),
    /// The size has the right form but exceeds [`MAX_GENERATE_SIZE`].
    UnsupportedSize(usize),
    /// A row index outside 1..=4q−2.
    RowIndexOutOfRange { index: usize, q: usize },
    /// An allocation whose shape or counts do not fit the partition.
    AllocationMismatch,
    /// Refining any further would overflow the signature bit history.
    DepthLimit,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenError::InvalidSize(m) => write!(
                f,
                "m={m} is incorrect size for generation one pseudo-Hadamard matrices"
            ),
            GenError::UnsupportedSize(m) => write!(
                f,
                "m={m} exceeds the maximum supported generation size {MAX_GENERATE_SIZE}"
            ),
            GenError::RowIndexOutOfRange { index, q } => {
                let m = (4 * q).saturating_sub(2);
                write!(f, "row index {index} is outside 1..={m} for q={q}")
            }
            GenError::AllocationMismatch => {
                f.write_str("allocation does not fit the partition")
            }
            GenError::DepthLimit => {
                f.write_str("partition depth exhausts the signature space")
            }
        }
    }
}

impl core::error::Error for GenError {}

/// Checks a requested generation size and returns its parameter q.
pub fn validate_size(m: usize) -> Result<usize, GenError> {
    if m < 2 || m % 4 != 2 {
        return Err(GenError::InvalidSize(m));
    }
    if m > MAX_GENERATE_SIZE {
        return Err(GenError::UnsupportedSize(m));
    }
    Ok((m + 2) / 4)
}

/// Weight and scalar-product targets for row `i` (1-based) at parameter q:
/// (2q−1, q−1) within the leading 2q−1 rows, (2q, q) below them.
///
/// The scalar-product target applies against every earlier row; crossing
/// pairs take the non-leading value, which the leading row's own target
/// already equals when `i` is in the leading block.
pub fn row_targets(i: usize, q: usize) -> Result<(usize, usize), GenError> {
    if q == 0 || i == 0 || i > 4 * q - 2 {
        return Err(GenError::RowIndexOutOfRange { index: i, q });
    }
    Ok(if i < 2 * q {
        (2 * q - 1, q - 1)
    } else {
        (2 * q, q)
    })
}

/// A maximal group of columns with identical bit history, occupying the
/// contiguous span `lo..hi`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ColumnClass {
    /// Bit history of the class's columns; the entry received in the most
    /// recently placed row is the low bit.
    pub signature: u128,
    pub lo: usize,
    pub hi: usize,
}

impl ColumnClass {
    pub fn size(&self) -> usize {
        self.hi - self.lo
    }

    /// The entry this class received in placed row `row` (1-based), given
    /// the partition depth.
    pub fn row_bit(&self, depth: usize, row: usize) -> bool {
        debug_assert!(row >= 1 && row <= depth, "row outside the placed range");
        (self.signature >> (depth - row)) & 1 == 1
    }
}

/// The column classes after some number of rows (the depth) have been
/// placed. Classes are ordered by span and their spans tile 0..m.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColumnClassPartition {
    depth: usize,
    classes: Vec<ColumnClass>,
}

impl ColumnClassPartition {
    /// The depth-0 partition: all `m` columns in one class. `m` must be
    /// positive.
    pub fn root(m: usize) -> Self {
        assert!(m > 0, "matrix size must be positive");
        ColumnClassPartition {
            depth: 0,
            classes: vec![ColumnClass {
                signature: 0,
                lo: 0,
                hi: m,
            }],
        }
    }

    /// Number of rows placed so far.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn classes(&self) -> &[ColumnClass] {
        &self.classes
    }

    /// Total number of columns.
    pub fn width(&self) -> usize {
        self.classes.last().map_or(0, |c| c.hi)
    }
}

/// How many ones the next row places into each class, aligned with the
/// partition's class order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowAllocation {
    pub counts: Vec<usize>,
}

fn check_fit(partition: &ColumnClassPartition, alloc: &RowAllocation) -> Result<(), GenError> {
    if alloc.counts.len() != partition.classes().len() {
        return Err(GenError::AllocationMismatch);
    }
    for (class, &k) in partition.classes().iter().zip(&alloc.counts) {
        if k > class.size() {
            return Err(GenError::AllocationMismatch);
        }
    }
    Ok(())
}

/// Splits every class by the allocated row: the zero half keeps the left
/// part of the span with signature 2s, the one half takes the right part
/// with signature 2s+1. Empty halves are dropped.
pub fn refine(
    partition: &ColumnClassPartition,
    alloc: &RowAllocation,
) -> Result<ColumnClassPartition, GenError> {
    check_fit(partition, alloc)?;
    if partition.depth() >= MAX_GENERATE_SIZE {
        return Err(GenError::DepthLimit);
    }
    let mut classes = Vec::with_capacity(partition.classes().len() * 2);
    for (class, &k) in partition.classes().iter().zip(&alloc.counts) {
        let split = class.hi - k;
        if split > class.lo {
            classes.push(ColumnClass {
                signature: class.signature << 1,
                lo: class.lo,
                hi: split,
            });
        }
        if k > 0 {
            classes.push(ColumnClass {
                signature: (class.signature << 1) | 1,
                lo: split,
                hi: class.hi,
            });
        }
    }
    Ok(ColumnClassPartition {
        depth: partition.depth() + 1,
        classes,
    })
}

/// Materializes the allocated row: within each class the ones occupy the
/// rightmost columns.
pub fn emit_row(
    partition: &ColumnClassPartition,
    alloc: &RowAllocation,
) -> Result<BitRow, GenError> {
    check_fit(partition, alloc)?;
    let mut row = BitRow::zeros(partition.width());
    for (class, &k) in partition.classes().iter().zip(&alloc.counts) {
        for col in (class.hi - k)..class.hi {
            row.set(col, true);
        }
    }
    Ok(row)
}

/// Lazy stream over the valid one-count vectors for the next row, in
/// ascending lexicographic order.
///
/// A vector k is valid when 0 ≤ k\[c\] ≤ size(c), the k\[c\] sum to `weight`,
/// and for every placed row j the k\[c\] of the classes under row j's ones
/// sum to `inner`. The stream backtracks over classes left to right,
/// bounding each k\[c\] by what the remaining classes can still absorb, so
/// every partial choice it explores extends to at least one valid vector.
pub struct Allocations {
    sizes: Vec<usize>,
    // member[c] bit j set: class c lies under the ones of placed row j+1.
    member: Vec<u128>,
    weight: usize,
    inner: usize,
    depth: usize,
    // cap_total[c]: columns in classes c.. ; cap_member[j*(C+1)+c]: columns
    // of member classes c.. for constraint j. Both include a trailing zero.
    cap_total: Vec<usize>,
    cap_member: Vec<usize>,
    k: Vec<usize>,
    total: usize,
    running: Vec<usize>,
    pos: usize,
    state: IterState,
}

#[derive(PartialEq, Eq)]
enum IterState {
    Fresh,
    Active,
    Done,
}

/// Streams the valid allocations of `weight` ones for the next row over
/// `partition`, each placed row constraining its classes to `inner` ones.
pub fn enumerate_allocations(
    partition: &ColumnClassPartition,
    weight: usize,
    inner: usize,
) -> Allocations {
    let classes = partition.classes();
    let count = classes.len();
    let depth = partition.depth();
    let sizes: Vec<usize> = classes.iter().map(ColumnClass::size).collect();
    let member: Vec<u128> = classes
        .iter()
        .map(|class| {
            let mut bits = 0u128;
            for j in 0..depth {
                if class.row_bit(depth, j + 1) {
                    bits |= 1 << j;
                }
            }
            bits
        })
        .collect();
    let mut cap_total = vec![0; count + 1];
    for c in (0..count).rev() {
        cap_total[c] = cap_total[c + 1] + sizes[c];
    }
    let mut cap_member = vec![0; depth * (count + 1)];
    for j in 0..depth {
        for c in (0..count).rev() {
            let here = if (member[c] >> j) & 1 == 1 { sizes[c] } else { 0 };
            cap_member[j * (count + 1) + c] = cap_member[j * (count + 1) + c + 1] + here;
        }
    }
    Allocations {
        sizes,
        member,
        weight,
        inner,
        depth,
        cap_total,
        cap_member,
        k: vec![0; count],
        total: 0,
        running: vec![0; depth],
        pos: 0,
        state: IterState::Fresh,
    }
}

impl Allocations {
    fn class_count(&self) -> usize {
        self.sizes.len()
    }

    fn is_member(&self, c: usize, j: usize) -> bool {
        (self.member[c] >> j) & 1 == 1
    }

    fn cap_member_at(&self, j: usize, c: usize) -> usize {
        self.cap_member[j * (self.class_count() + 1) + c]
    }

    // Feasible range for k[c] given the sums over k[0..c]; None when no
    // choice of k[c] can lead to a valid completion.
    fn bounds(&self, c: usize) -> Option<(usize, usize)> {
        let mut lo = self.weight.saturating_sub(self.total + self.cap_total[c + 1]);
        let mut hi = self.sizes[c].min(self.weight - self.total);
        for j in 0..self.depth {
            let rem = self.cap_member_at(j, c + 1);
            let run = self.running[j];
            if self.is_member(c, j) {
                lo = lo.max(self.inner.saturating_sub(run + rem));
                hi = hi.min(self.inner - run);
            } else if run + rem < self.inner {
                return None;
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn apply(&mut self, c: usize, v: usize) {
        self.k[c] = v;
        self.total += v;
        for j in 0..self.depth {
            if self.is_member(c, j) {
                self.running[j] += v;
            }
        }
    }

    fn unapply(&mut self, c: usize) {
        let v = self.k[c];
        self.total -= v;
        for j in 0..self.depth {
            if self.is_member(c, j) {
                self.running[j] -= v;
            }
        }
    }

    // Fills k[c..] with the smallest feasible values. On failure leaves
    // `pos` at the stuck class, with k[..pos] still applied.
    fn descend(&mut self, mut c: usize) -> bool {
        while c < self.class_count() {
            match self.bounds(c) {
                Some((lo, _)) => {
                    self.apply(c, lo);
                    c += 1;
                }
                None => {
                    self.pos = c;
                    return false;
                }
            }
        }
        self.pos = c;
        true
    }

    // Undoes choices right to left until one can be raised, then descends
    // again from there.
    fn advance(&mut self) -> bool {
        loop {
            if self.pos == 0 {
                return false;
            }
            self.pos -= 1;
            let c = self.pos;
            self.unapply(c);
            if let Some((_, hi)) = self.bounds(c) {
                let next = self.k[c] + 1;
                if next <= hi {
                    self.apply(c, next);
                    if self.descend(c + 1) {
                        return true;
                    }
                }
            }
        }
    }
}

impl Iterator for Allocations {
    type Item = RowAllocation;

    fn next(&mut self) -> Option<RowAllocation> {
        let found = match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Active;
                self.descend(0) || self.advance()
            }
            IterState::Active => self.advance(),
        };
        if found {
            Some(RowAllocation {
                counts: self.k.clone(),
            })
        } else {
            self.state = IterState::Done;
            None
        }
    }
}

impl FusedIterator for Allocations {}

/// Receives generated matrices; `emit` may break to stop the search early.
pub trait MatrixSink {
    fn emit(&mut self, matrix: &BinMatrix) -> ControlFlow<()>;

    /// Called after every `progress_every`-th emission.
    fn progress(&mut self, _emitted: u64) {}
}

impl<F: FnMut(&BinMatrix) -> ControlFlow<()>> MatrixSink for F {
    fn emit(&mut self, matrix: &BinMatrix) -> ControlFlow<()> {
        self(matrix)
    }
}

/// Collects every emitted matrix; convenient for tests and small sizes.
#[derive(Default)]
pub struct CollectSink {
    pub matrices: Vec<BinMatrix>,
}

impl MatrixSink for CollectSink {
    fn emit(&mut self, matrix: &BinMatrix) -> ControlFlow<()> {
        self.matrices.push(matrix.clone());
        ControlFlow::Continue(())
    }
}

/// Drops every emitted matrix; the report still carries the count.
#[derive(Default)]
pub struct DiscardSink;

impl MatrixSink for DiscardSink {
    fn emit(&mut self, _matrix: &BinMatrix) -> ControlFlow<()> {
        ControlFlow::Continue(())
    }
}

/// What a [`generate`] run produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenerateReport {
    pub m: usize,
    pub q: usize,
    pub matrices_emitted: u64,
    /// True when the run stopped because `limit` was reached.
    pub limit_reached: bool,
}

struct Search<'s, S: MatrixSink + ?Sized> {
    m: usize,
    q: usize,
    limit: Option<u64>,
    progress_every: Option<u64>,
    sink: &'s mut S,
    rows: Vec<BitRow>,
    emitted: u64,
    limit_reached: bool,
}

impl<S: MatrixSink + ?Sized> Search<'_, S> {
    fn run(&mut self, partition: &ColumnClassPartition) -> ControlFlow<()> {
        if partition.depth() == self.m {
            let matrix = BinMatrix::from_bit_rows(&self.rows);
            debug_assert!(
                is_row_gram_pseudo(&matrix),
                "search invariants must force the row Gramian"
            );
            self.emitted += 1;
            self.sink.emit(&matrix)?;
            if let Some(every) = self.progress_every
                && every > 0
                && self.emitted.is_multiple_of(every)
            {
                self.sink.progress(self.emitted);
            }
            if self.limit.is_some_and(|limit| self.emitted >= limit) {
                self.limit_reached = true;
                return ControlFlow::Break(());
            }
            return ControlFlow::Continue(());
        }
        let (weight, inner) =
            row_targets(partition.depth() + 1, self.q).expect("row index within 1..=m");
        for alloc in enumerate_allocations(partition, weight, inner) {
            let row = emit_row(partition, &alloc).expect("enumerated allocation fits");
            let child = refine(partition, &alloc).expect("enumerated allocation fits");
            self.rows.push(row);
            let flow = self.run(&child);
            self.rows.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Runs the exhaustive search for size `m`, feeding each matrix to `sink`
/// in a fixed, reproducible order.
///
/// Stops after `limit` matrices when a limit is given. `progress_every`
/// triggers the sink's progress callback at that emission cadence.
pub fn generate<S: MatrixSink + ?Sized>(
    m: usize,
    limit: Option<u64>,
    progress_every: Option<u64>,
    sink: &mut S,
) -> Result<GenerateReport, GenError> {
    let q = validate_size(m)?;
    let mut search = Search {
        m,
        q,
        limit,
        progress_every,
        sink,
        rows: Vec::with_capacity(m),
        emitted: 0,
        limit_reached: false,
    };
    if limit == Some(0) {
        search.limit_reached = true;
    } else {
        let _ = search.run(&ColumnClassPartition::root(m));
    }
    Ok(GenerateReport {
        m,
        q,
        matrices_emitted: search.emitted,
        limit_reached: search.limit_reached,
    })
}
