//! Pseudo-Hadamard matrices of the first generation: verification predicates,
//! structure-preserving transformations, and exhaustive generation, all on
//! bit-packed square {0,1} matrices.
//!
//! A Hadamard matrix in {0,1} presentation is a square matrix of size 4q−1
//! whose row Gramian has 2q on the diagonal and q everywhere else. Deleting
//! the first row and column of such a matrix in normalized form leaves a
//! square matrix of size 4q−2 whose row and column Gramians both take a block
//! form: the leading 2q−1 indices see 2q−1 on the diagonal and q−1 among
//! themselves, every other entry is 2q on the diagonal and q off it. Matrices
//! with that two-sided block Gramian are the pseudo-Hadamard matrices of the
//! first generation, and the two constructions are mutually inverse.
//!
//! The crate is `no_std` (alloc only). File formats and the command-line
//! front end live in the companion `phm-cli` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod generator;
pub mod gram;
pub mod matrix;
pub mod oracle;
pub mod perm;
pub mod transform;

pub use generator::{CollectSink, DiscardSink, GenerateReport, MatrixSink, generate};
pub use gram::{
    GramKind, GramTarget, expected_gram, gram_of_cols, gram_of_rows, is_col_gram_pseudo,
    is_hadamard, is_pseudo_hadamard, is_row_gram_pseudo,
};
pub use matrix::{BinMatrix, BitRow, IntMatrix};
pub use perm::Permutation;
pub use transform::{
    extract_first_generation, find_column_fix, find_row_fix, lift_to_hadamard,
    normalize_hadamard, permute_cols, permute_rows,
};
