//! Index permutations used to rearrange rows and columns.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A permutation of {0, …, n−1}, stored as its image: position `i` maps to
/// `image[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

/// Why a vector of indices is not a permutation image.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PermError {
    /// `image[index]` is not below the length.
    IndexOutOfRange { index: usize, n: usize },
    /// `image[index]` repeats an earlier value.
    Duplicate { index: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PermError::IndexOutOfRange { index, n } => {
                write!(f, "image entry {index} is out of range for length {n}")
            }
            PermError::Duplicate { index } => {
                write!(f, "image entry {index} repeats an earlier value")
            }
        }
    }
}

impl core::error::Error for PermError {}

impl Permutation {
    /// The identity on {0, …, n−1}.
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Validates that `image` is a bijection on {0, …, n−1} where n is its
    /// length.
    pub fn from_image(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (index, &v) in image.iter().enumerate() {
            if v >= n {
                return Err(PermError::IndexOutOfRange { index, n });
            }
            if seen[v] {
                return Err(PermError::Duplicate { index });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// The permutation on {0, …, n−1} swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a < n && b < n, "indices out of range");
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Permutation { image }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }
}
