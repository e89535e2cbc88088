//! Structure-preserving transformations: row/column permutation, the
//! normalized form of a Hadamard matrix, the minor/lift pair connecting the
//! two families, and the column (or row) fixes that upgrade a one-sided Gram
//! match to a two-sided one.

use crate::gram::{is_hadamard, is_pseudo_hadamard, is_row_gram_pseudo};
use crate::matrix::BinMatrix;
use crate::perm::Permutation;
use alloc::vec::Vec;
use core::fmt;

/// Why a transformation refused its input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransformError {
    /// Permutation length differs from the matrix size.
    SizeMismatch { matrix: usize, permutation: usize },
    /// The input is not a Hadamard matrix in {0,1} presentation.
    NotHadamard,
    /// The input is Hadamard but not in normalized form.
    NotNormalized,
    /// The input is not a pseudo-Hadamard matrix of the first generation.
    NotPseudoHadamard,
    /// The input's row Gramian does not match the pseudo block form.
    NotRowGram,
    /// The input's column Gramian does not match the pseudo block form.
    NotColGram,
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TransformError::SizeMismatch { matrix, permutation } => write!(
                f,
                "permutation length {permutation} does not match matrix size {matrix}"
            ),
            TransformError::NotHadamard => f.write_str("input is not a Hadamard matrix"),
            TransformError::NotNormalized => {
                f.write_str("input Hadamard matrix is not in normalized form")
            }
            TransformError::NotPseudoHadamard => {
                f.write_str("input is not a pseudo-Hadamard matrix")
            }
            TransformError::NotRowGram => {
                f.write_str("input's row Gramian does not match the pseudo block form")
            }
            TransformError::NotColGram => {
                f.write_str("input's column Gramian does not match the pseudo block form")
            }
        }
    }
}

impl core::error::Error for TransformError {}

/// Rearranges rows: row `i` of the result is row `p.image()[i]` of `mat`.
pub fn permute_rows(mat: &BinMatrix, p: &Permutation) -> Result<BinMatrix, TransformError> {
    if p.n() != mat.size() {
        return Err(TransformError::SizeMismatch {
            matrix: mat.size(),
            permutation: p.n(),
        });
    }
    Ok(BinMatrix::from_fn(mat.size(), |i, j| {
        mat.get(p.image()[i], j)
    }))
}

/// Rearranges columns: column `k` of the result is column `p.image()[k]` of
/// `mat`.
pub fn permute_cols(mat: &BinMatrix, p: &Permutation) -> Result<BinMatrix, TransformError> {
    if p.n() != mat.size() {
        return Err(TransformError::SizeMismatch {
            matrix: mat.size(),
            permutation: p.n(),
        });
    }
    Ok(BinMatrix::from_fn(mat.size(), |i, j| {
        mat.get(i, p.image()[j])
    }))
}

// Indices of `all` where `pred` holds, followed by the rest, original order
// kept on both sides. Always a permutation image.
fn stable_partition(all: impl Iterator<Item = usize> + Clone, pred: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut image: Vec<usize> = all.clone().filter(|&i| pred(i)).collect();
    image.extend(all.filter(|&i| !pred(i)));
    image
}

/// Brings a Hadamard matrix to normalized form: the first row and the first
/// column each consist of 2q ones followed by 2q−1 zeros.
///
/// Columns are stably reordered so the ones of row 0 come first, then rows
/// 1… are stably reordered so the ones of column 0 come first. Stability
/// makes the result a deterministic function of the input.
pub fn normalize_hadamard(mat: &BinMatrix) -> Result<BinMatrix, TransformError> {
    if !is_hadamard(mat) {
        return Err(TransformError::NotHadamard);
    }
    let m = mat.size();
    let cols = Permutation::from_image(stable_partition(0..m, |j| mat.get(0, j)))
        .expect("stable partition yields a bijection");
    let step = permute_cols(mat, &cols)?;
    let mut row_image = Vec::with_capacity(m);
    row_image.push(0);
    row_image.extend(stable_partition(1..m, |i| step.get(i, 0)));
    let rows = Permutation::from_image(row_image).expect("stable partition yields a bijection");
    let out = permute_rows(&step, &rows)?;
    debug_assert!(is_hadamard(&out));
    Ok(out)
}

// Whether a Hadamard matrix of size 4q−1 is in normalized form.
fn is_normalized(mat: &BinMatrix) -> bool {
    let ones = mat.size().div_ceil(2); // 2q
    (0..mat.size()).all(|j| mat.get(0, j) == (j < ones))
        && (0..mat.size()).all(|i| mat.get(i, 0) == (i < ones))
}

/// Deletes row 0 and column 0 of a normalized Hadamard matrix, producing a
/// pseudo-Hadamard matrix of the first generation.
pub fn extract_first_generation(mat: &BinMatrix) -> Result<BinMatrix, TransformError> {
    if !is_hadamard(mat) {
        return Err(TransformError::NotHadamard);
    }
    if !is_normalized(mat) {
        return Err(TransformError::NotNormalized);
    }
    let out = BinMatrix::from_fn(mat.size() - 1, |i, j| mat.get(i + 1, j + 1));
    debug_assert!(is_pseudo_hadamard(&out));
    Ok(out)
}

/// Rebuilds the normalized Hadamard matrix whose first-generation minor is
/// `mat`; the inverse of [`extract_first_generation`].
///
/// The deleted row is recovered from the column sums (a column of the minor
/// sums to 2q exactly when the deleted row held a zero over it), the deleted
/// column from the block structure.
pub fn lift_to_hadamard(mat: &BinMatrix) -> Result<BinMatrix, TransformError> {
    if !is_pseudo_hadamard(mat) {
        return Err(TransformError::NotPseudoHadamard);
    }
    let m = mat.size();
    let q = (m + 2) / 4;
    let top: Vec<bool> = (0..m).map(|j| mat.col_weight(j) == 2 * q - 1).collect();
    let out = BinMatrix::from_fn(m + 1, |i, j| match (i, j) {
        (0, 0) => true,
        (0, _) => top[j - 1],
        (_, 0) => i < 2 * q,
        _ => mat.get(i - 1, j - 1),
    });
    debug_assert!(is_hadamard(&out) && is_normalized(&out));
    Ok(out)
}

/// Given a matrix whose row Gramian already matches the pseudo block form,
/// looks for a column permutation making it fully pseudo-Hadamard.
///
/// The candidate is the stable partition that moves the columns of sum 2q−1
/// to the front. Returns the witness permutation if that works, `None` if it
/// does not (no input with a row-Gram match is known to need more).
pub fn find_column_fix(mat: &BinMatrix) -> Result<Option<Permutation>, TransformError> {
    if !is_row_gram_pseudo(mat) {
        return Err(TransformError::NotRowGram);
    }
    let q = (mat.size() + 2) / 4;
    let image = stable_partition(0..mat.size(), |j| mat.col_weight(j) == 2 * q - 1);
    let p = Permutation::from_image(image).expect("stable partition yields a bijection");
    let fixed = permute_cols(mat, &p)?;
    Ok(is_pseudo_hadamard(&fixed).then_some(p))
}

/// Row-side dual of [`find_column_fix`]: for a matrix whose column Gramian
/// matches the block form, looks for a row permutation making it fully
/// pseudo-Hadamard.
pub fn find_row_fix(mat: &BinMatrix) -> Result<Option<Permutation>, TransformError> {
    // Transposing swaps the two Gramians and is_pseudo_hadamard is
    // transpose-invariant, so the column fix of the transpose is exactly the
    // row fix of the original.
    match find_column_fix(&mat.transpose()) {
        Ok(witness) => {
            #[cfg(debug_assertions)]
            if let Some(p) = &witness {
                debug_assert!(is_pseudo_hadamard(&permute_rows(mat, p).unwrap()));
            }
            Ok(witness)
        }
        Err(_) => Err(TransformError::NotColGram),
    }
}
