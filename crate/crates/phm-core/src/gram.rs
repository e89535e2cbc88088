//! Gram-matrix targets and the verification predicates built on them.
//!
//! Both matrix families are recognized purely through their Gramians. For a
//! Hadamard matrix of size 4q−1 in {0,1} presentation the row Gramian is 2q
//! on the diagonal and q elsewhere. For a pseudo-Hadamard matrix of the first
//! generation, size 4q−2, the row and column Gramians both take a block form:
//! within the leading 2q−1 indices the diagonal is 2q−1 and the off-diagonal
//! q−1, everywhere else the diagonal is 2q and the off-diagonal q.

use crate::matrix::{BinMatrix, IntMatrix};
use core::fmt;

/// Which family a [`GramTarget`] describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GramKind {
    Hadamard,
    Pseudo,
}

/// The expected Gramian of one matrix family, spelled out entry by entry.
///
/// For `Hadamard` the leading block is empty and the `leading_*` fields are
/// unused (zero). For `Pseudo` the leading block covers the first 2q−1
/// indices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GramTarget {
    pub kind: GramKind,
    /// Size parameter: matrices have size 4q−1 (Hadamard) or 4q−2 (pseudo).
    pub q: usize,
    /// Matrix size the target applies to.
    pub m: usize,
    /// Diagonal entry (row weight) outside the leading block.
    pub diag: usize,
    /// Off-diagonal entry for pairs not both inside the leading block.
    pub off_diag: usize,
    /// Diagonal entry inside the leading block.
    pub leading_diag: usize,
    /// Off-diagonal entry for pairs inside the leading block.
    pub leading_off_diag: usize,
}

impl GramTarget {
    /// Target for Hadamard matrices of size 4q−1. `q` must be positive.
    pub fn hadamard(q: usize) -> Self {
        assert!(q > 0, "q must be positive");
        GramTarget {
            kind: GramKind::Hadamard,
            q,
            m: 4 * q - 1,
            diag: 2 * q,
            off_diag: q,
            leading_diag: 0,
            leading_off_diag: 0,
        }
    }

    /// Target for pseudo-Hadamard matrices of size 4q−2. `q` must be positive.
    pub fn pseudo(q: usize) -> Self {
        assert!(q > 0, "q must be positive");
        GramTarget {
            kind: GramKind::Pseudo,
            q,
            m: 4 * q - 2,
            diag: 2 * q,
            off_diag: q,
            leading_diag: 2 * q - 1,
            leading_off_diag: q - 1,
        }
    }

    /// The Hadamard target whose size is exactly `m`, if `m` has the form 4q−1.
    pub fn hadamard_for_size(m: usize) -> Option<Self> {
        if m >= 3 && (m + 1).is_multiple_of(4) {
            Some(Self::hadamard((m + 1) / 4))
        } else {
            None
        }
    }

    /// The pseudo target whose size is exactly `m`, if `m` has the form 4q−2.
    pub fn pseudo_for_size(m: usize) -> Option<Self> {
        if m >= 2 && (m + 2).is_multiple_of(4) {
            Some(Self::pseudo((m + 2) / 4))
        } else {
            None
        }
    }

    /// Number of leading-block indices: 2q−1 for pseudo targets, 0 for Hadamard.
    pub fn leading_len(&self) -> usize {
        match self.kind {
            GramKind::Hadamard => 0,
            GramKind::Pseudo => 2 * self.q - 1,
        }
    }

    /// Whether the fields satisfy the family's size and entry relations.
    pub fn is_valid(&self) -> bool {
        if self.q == 0 || self.diag != 2 * self.q || self.off_diag != self.q {
            return false;
        }
        match self.kind {
            GramKind::Hadamard => self.m == 4 * self.q - 1,
            GramKind::Pseudo => {
                self.m == 4 * self.q - 2
                    && self.leading_diag == self.diag - 1
                    && self.leading_off_diag == self.off_diag - 1
            }
        }
    }
}

/// A [`GramTarget`] whose fields break the family's invariants.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InvalidTarget(pub GramTarget);

impl fmt::Display for InvalidTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gram target violates its invariants: {:?}", self.0)
    }
}

impl core::error::Error for InvalidTarget {}

/// The row Gramian of `mat`: entry (i, j) is the scalar product of rows i and j.
pub fn gram_of_rows(mat: &BinMatrix) -> IntMatrix {
    let n = mat.size();
    let mut g = IntMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let d = mat.row_dot(i, j);
            g.set(i, j, d);
            g.set(j, i, d);
        }
    }
    g
}

/// The column Gramian of `mat`; equals the row Gramian of its transpose.
pub fn gram_of_cols(mat: &BinMatrix) -> IntMatrix {
    gram_of_rows(&mat.transpose())
}

/// Spells out the full expected Gramian for a valid target.
pub fn expected_gram(target: &GramTarget) -> Result<IntMatrix, InvalidTarget> {
    if !target.is_valid() {
        return Err(InvalidTarget(*target));
    }
    let lead = target.leading_len();
    Ok(IntMatrix::from_fn(target.m, |i, j| {
        match (i == j, i < lead && j < lead) {
            (true, true) => target.leading_diag,
            (true, false) => target.diag,
            (false, true) => target.leading_off_diag,
            (false, false) => target.off_diag,
        }
    }))
}

/// Whether `mat` is a Hadamard matrix in {0,1} presentation.
///
/// False whenever the size is not of the form 4q−1 (in particular for the
/// 1×1 matrix of a single one), otherwise exactly when the row Gramian
/// matches [`GramTarget::hadamard`]. Short-circuits on the first wrong entry.
pub fn is_hadamard(mat: &BinMatrix) -> bool {
    let Some(t) = GramTarget::hadamard_for_size(mat.size()) else {
        return false;
    };
    for i in 0..mat.size() {
        if mat.row_weight(i) != t.diag {
            return false;
        }
        for j in (i + 1)..mat.size() {
            if mat.row_dot(i, j) != t.off_diag {
                return false;
            }
        }
    }
    true
}

/// Whether the row Gramian of `mat` matches the pseudo-Hadamard block form.
///
/// False whenever the size is not of the form 4q−2. This is one half of
/// [`is_pseudo_hadamard`]; it admits matrices whose columns are scrambled.
pub fn is_row_gram_pseudo(mat: &BinMatrix) -> bool {
    let Some(t) = GramTarget::pseudo_for_size(mat.size()) else {
        return false;
    };
    let lead = t.leading_len();
    for i in 0..mat.size() {
        let want = if i < lead { t.leading_diag } else { t.diag };
        if mat.row_weight(i) != want {
            return false;
        }
        for j in (i + 1)..mat.size() {
            let want = if j < lead { t.leading_off_diag } else { t.off_diag };
            if mat.row_dot(i, j) != want {
                return false;
            }
        }
    }
    true
}

/// Whether the column Gramian of `mat` matches the pseudo-Hadamard block form.
pub fn is_col_gram_pseudo(mat: &BinMatrix) -> bool {
    is_row_gram_pseudo(&mat.transpose())
}

/// Whether `mat` is a pseudo-Hadamard matrix of the first generation: both
/// its row and its column Gramian match the block form.
pub fn is_pseudo_hadamard(mat: &BinMatrix) -> bool {
    is_row_gram_pseudo(mat) && is_col_gram_pseudo(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(rows: &[&str]) -> BinMatrix {
        BinMatrix::parse_rows(rows).unwrap()
    }

    // The matrix that motivates the two-sided condition: its row Gramian has
    // constant diagonal 3 and off-diagonal 2, yet no Hadamard target allows that.
    fn weight_three_circulant() -> BinMatrix {
        parse(&["1110", "1101", "1011", "0111"])
    }

    #[test]
    fn gram_of_rows_matches_hand_computation() {
        let g = gram_of_rows(&weight_three_circulant());
        assert_eq!(g, IntMatrix::from_fn(4, |i, j| if i == j { 3 } else { 2 }));

        let h = gram_of_rows(&parse(&["110", "101", "011"]));
        assert_eq!(h, IntMatrix::from_fn(3, |i, j| if i == j { 2 } else { 1 }));

        let p = gram_of_rows(&parse(&["01", "11"]));
        assert_eq!(p.get(0, 0), 1);
        assert_eq!(p.get(0, 1), 1);
        assert_eq!(p.get(1, 1), 2);
    }

    #[test]
    fn gram_of_cols_matches_hand_computation() {
        let g = gram_of_cols(&parse(&["01", "11"]));
        assert_eq!(g.get(0, 0), 1);
        assert_eq!(g.get(0, 1), 1);
        assert_eq!(g.get(1, 1), 2);

        // Column Gramian differs from the row Gramian on a non-symmetric matrix.
        let m = parse(&["110", "100", "000"]);
        assert_eq!(gram_of_cols(&m).get(0, 0), 2);
        assert_eq!(gram_of_rows(&m).get(0, 0), 2);
        assert_eq!(gram_of_cols(&m).get(1, 1), 1);
    }

    #[test]
    fn expected_gram_spells_out_both_families() {
        let had = expected_gram(&GramTarget::hadamard(1)).unwrap();
        assert_eq!(had, IntMatrix::from_fn(3, |i, j| if i == j { 2 } else { 1 }));

        let pseudo = expected_gram(&GramTarget::pseudo(2)).unwrap();
        // Size 6, leading block of 3: diagonal 3, off-diagonal 1 inside it,
        // diagonal 4 and off-diagonal 2 elsewhere.
        for i in 0..6 {
            for j in 0..6 {
                let want = match (i == j, i < 3 && j < 3) {
                    (true, true) => 3,
                    (true, false) => 4,
                    (false, true) => 1,
                    (false, false) => 2,
                };
                assert_eq!(pseudo.get(i, j), want, "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn expected_gram_rejects_inconsistent_targets() {
        let mut bad = GramTarget::hadamard(2);
        bad.m = 8;
        assert!(expected_gram(&bad).is_err());
        let mut bad = GramTarget::pseudo(2);
        bad.leading_diag = 4;
        assert!(!bad.is_valid());
        assert!(expected_gram(&bad).is_err());
    }

    // Row sums of the expected pseudo Gramian: 4q²−3q+1 for leading rows,
    // 4q²−q for the rest. A closed-form cross-check on the block layout.
    #[test]
    fn expected_pseudo_gram_row_sums() {
        for q in 1..=12 {
            let g = expected_gram(&GramTarget::pseudo(q)).unwrap();
            for i in 0..g.size() {
                let want = if i < 2 * q - 1 {
                    4 * q * q - 3 * q + 1
                } else {
                    4 * q * q - q
                };
                assert_eq!(g.row_sum(i), want, "q={q} row {i}");
            }
        }
    }

    #[test]
    fn hadamard_predicate_on_known_matrices() {
        assert!(is_hadamard(&parse(&["110", "101", "011"])));
        assert!(!is_hadamard(&weight_three_circulant()));
        // Size 1 is not of the form 4q−1 with positive q.
        assert!(!is_hadamard(&parse(&["1"])));
        assert!(!is_hadamard(&BinMatrix::identity(3)));
    }

    #[test]
    fn row_gram_predicate_on_known_matrices() {
        assert!(is_row_gram_pseudo(&parse(&["01", "11"])));
        assert!(is_row_gram_pseudo(&parse(&["10", "11"])));
        assert!(!is_row_gram_pseudo(&BinMatrix::identity(2)));
        // Right size, wrong weights.
        assert!(!is_row_gram_pseudo(&parse(&["11", "11"])));
        // Wrong size entirely.
        assert!(!is_row_gram_pseudo(&parse(&["110", "101", "011"])));
    }

    #[test]
    fn pseudo_predicate_needs_both_sides() {
        assert!(is_pseudo_hadamard(&parse(&["01", "11"])));
        // Row Gramian fits, column Gramian has the blocks swapped.
        let scrambled = parse(&["10", "11"]);
        assert!(is_row_gram_pseudo(&scrambled));
        assert!(!is_col_gram_pseudo(&scrambled));
        assert!(!is_pseudo_hadamard(&scrambled));
        assert!(!is_pseudo_hadamard(&BinMatrix::identity(2)));
    }

    proptest! {
        #[test]
        fn gramians_are_symmetric(rows in proptest::collection::vec(0u64..64, 1..=6)) {
            let m = rows.len();
            let mat = BinMatrix::from_fn(m, |i, j| (rows[i] >> j) & 1 == 1);
            let g = gram_of_rows(&mat);
            prop_assert!(g.is_symmetric());
            prop_assert_eq!(gram_of_cols(&mat), gram_of_rows(&mat.transpose()));
        }

        // The short-circuiting predicates agree with full Gramian comparison.
        #[test]
        fn predicates_agree_with_gram_equality(rows in proptest::collection::vec(0u64..64, 2..=6)) {
            let m = rows.len();
            let mat = BinMatrix::from_fn(m, |i, j| (rows[i] >> j) & 1 == 1);
            let row_route = GramTarget::pseudo_for_size(m)
                .map(|t| gram_of_rows(&mat) == expected_gram(&t).unwrap())
                .unwrap_or(false);
            prop_assert_eq!(is_row_gram_pseudo(&mat), row_route);
            let had_route = GramTarget::hadamard_for_size(m)
                .map(|t| gram_of_rows(&mat) == expected_gram(&t).unwrap())
                .unwrap_or(false);
            prop_assert_eq!(is_hadamard(&mat), had_route);
        }
    }
}
