//! Corpus builders shared by the integration tests.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use phm_core::gram::{is_hadamard, is_pseudo_hadamard};
use phm_core::matrix::BinMatrix;
use phm_core::oracle::brute_force_row_gram;
use phm_core::perm::Permutation;
use phm_core::transform::permute_cols;

/// Every size-m matrix with a matching row Gramian, straight from the oracle.
pub fn row_gram_corpus(m: usize) -> Vec<BinMatrix> {
    brute_force_row_gram(m).unwrap()
}

/// The fully pseudo-Hadamard subset of the oracle corpus.
pub fn pseudo_corpus(m: usize) -> Vec<BinMatrix> {
    row_gram_corpus(m)
        .into_iter()
        .filter(is_pseudo_hadamard)
        .collect()
}

/// All 3×3 Hadamard matrices, by scanning the full 2^9 space.
pub fn all_hadamards_3() -> Vec<BinMatrix> {
    (0u16..512)
        .map(|bits| BinMatrix::from_fn(3, |i, j| (bits >> (3 * i + j)) & 1 == 1))
        .filter(is_hadamard)
        .collect()
}

/// Every permutation of {0, …, n−1}, lexicographic by image.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn build(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation::from_image(prefix.clone()).unwrap());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                build(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    build(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// First column permutation of `mat` that is fully pseudo-Hadamard, found by
/// plain exhaustive search. The ground truth the column fix is compared to.
pub fn exhaustive_column_fix(mat: &BinMatrix) -> Option<Permutation> {
    all_permutations(mat.size())
        .into_iter()
        .find(|p| is_pseudo_hadamard(&permute_cols(mat, p).unwrap()))
}
