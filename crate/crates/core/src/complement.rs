//! Complement transforms: the column-class complement and the row
//! complement. Either transform preserves the presence or absence of
//! symmetry, which is what lets small witnesses generate large ones.
//!
//! Columns of length m fall into 2^(m-1) isomorphism classes {c, ~c}; the
//! canonical representative is the lexicographically smaller member, which
//! is exactly the one whose top entry is 0 (every bit differs between the
//! two members).

use crate::bitmatrix::BinaryMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_DIMENSION_GUARD: usize = 30;

/// Lexicographically smaller of {c, complement(c)}, reading top-to-bottom
/// with 0 < 1. Idempotent and constant on isomorphism classes.
pub fn canonical_representative(column: &[bool]) -> Vec<bool> {
    if column.first().copied().unwrap_or(false) {
        column.iter().map(|&b| !b).collect()
    } else {
        column.to_vec()
    }
}

/// The m x (2^(m-1) - n) matrix whose columns are the canonical
/// representatives of every column class absent from `x`, in
/// lexicographic order.
pub fn column_complement(x: &BinaryMatrix) -> Result<BinaryMatrix> {
    column_complement_with_guard(x, DEFAULT_DIMENSION_GUARD)
}

pub fn column_complement_with_guard(x: &BinaryMatrix, guard: usize) -> Result<BinaryMatrix> {
    let m = x.row_count();
    if m > guard {
        return Err(Error::WidthGuardExceeded { dim: m, guard });
    }
    if let Some((a, b, _)) = x.isomorphic_column_pair() {
        return Err(Error::IsomorphicColumnsInInput(a, b));
    }
    // canonical representative of a packed column, as an integer with the
    // top row in the most significant bit so that integer order is
    // lexicographic order
    let encode = |col_top_down: u64| -> u64 {
        if col_top_down >> (m - 1) & 1 == 1 {
            !col_top_down & ((1u64 << m) - 1)
        } else {
            col_top_down
        }
    };
    let mut present = vec![false; 1usize << (m - 1)];
    for j in 0..x.col_count() {
        let mut bits = 0u64;
        for i in 0..m {
            if x.get(i, j) {
                bits |= 1 << (m - 1 - i);
            }
        }
        present[encode(bits) as usize] = true;
    }
    let width = (1usize << (m - 1)) - x.col_count();
    let mut out = BinaryMatrix::zeros(m, width);
    let mut col = 0;
    for code in 0..present.len() as u64 {
        // codes below 2^(m-1) have top row 0: already canonical, and
        // ascending code order is ascending lexicographic order
        if present[code as usize] {
            continue;
        }
        for i in 0..m {
            if code >> (m - 1 - i) & 1 == 1 {
                out.set(i, col, true);
            }
        }
        col += 1;
    }
    debug_assert_eq!(col, width);
    Ok(out)
}

/// The (2^n - m) x n matrix whose rows are the n-bit strings that are not
/// rows of `x`, in lexicographic order.
pub fn row_complement(x: &BinaryMatrix) -> Result<BinaryMatrix> {
    row_complement_with_guard(x, DEFAULT_DIMENSION_GUARD)
}

pub fn row_complement_with_guard(x: &BinaryMatrix, guard: usize) -> Result<BinaryMatrix> {
    let n = x.col_count();
    if n > guard {
        return Err(Error::WidthGuardExceeded { dim: n, guard });
    }
    if let Some((a, b)) = x.duplicate_row_pair() {
        return Err(Error::DuplicateRowsInInput(a, b));
    }
    let encode_row = |i: usize| -> u64 {
        let mut bits = 0u64;
        for j in 0..n {
            if x.get(i, j) {
                bits |= 1 << (n - 1 - j);
            }
        }
        bits
    };
    let mut present = vec![false; 1usize << n];
    for i in 0..x.row_count() {
        present[encode_row(i) as usize] = true;
    }
    let height = (1usize << n) - x.row_count();
    let mut out = BinaryMatrix::zeros(height, n);
    let mut row = 0;
    for code in 0..present.len() as u64 {
        if present[code as usize] {
            continue;
        }
        for j in 0..n {
            if code >> (n - 1 - j) & 1 == 1 {
                out.set(row, j, true);
            }
        }
        row += 1;
    }
    debug_assert_eq!(row, height);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::is_asymmetric;

    fn parse(s: &str) -> BinaryMatrix {
        s.trim().parse().unwrap()
    }

    #[test]
    fn canonical_representative_rule() {
        assert_eq!(
            canonical_representative(&[true, true, false, false, false]),
            vec![false, false, true, true, true]
        );
        let zeros = vec![false; 5];
        assert_eq!(canonical_representative(&zeros), zeros);
        // class function: same answer on both members
        let c = vec![true, false, true, false];
        let cc: Vec<bool> = c.iter().map(|&b| !b).collect();
        assert_eq!(canonical_representative(&c), canonical_representative(&cc));
        // idempotent
        assert_eq!(
            canonical_representative(&canonical_representative(&c)),
            canonical_representative(&c)
        );
    }

    #[test]
    fn column_complement_of_5x4_staircase() {
        let x = parse("1100\n0110\n0011\n0001\n0000");
        let y = column_complement(&x).unwrap();
        assert_eq!((y.row_count(), y.col_count()), (5, 12));
        let mut rw = y.row_weights();
        rw.sort_unstable();
        // after restricting to low weight the rows weigh 3, 4 and 5; the
        // canonical representatives here give the complement profile
        let (yl, _) = y.normalize_low_weight();
        let mut rwl = yl.row_weights();
        rwl.sort_unstable();
        assert_eq!(rwl, vec![3, 3, 3, 4, 5]);
        // class partition: together with x, all 16 classes are covered
        assert_eq!(x.col_count() + y.col_count(), 1 << 4);
        assert!(is_asymmetric(&y).unwrap());
    }

    #[test]
    fn transpose_law_holds_for_the_low_weight_representatives() {
        // the 5x12 complement of the 5x4 staircase is asymmetric under any
        // representative choice; its transpose is asymmetric for the
        // low-weight representatives (strictly low weight, rows below 6),
        // but not for the raw lexicographic ones, whose heavy columns fall
        // outside the transpose rule
        let x = parse("1100\n0110\n0011\n0001\n0000");
        let y = column_complement(&x).unwrap();
        assert!(is_asymmetric(&y).unwrap());
        let (y_low, _) = y.normalize_low_weight();
        assert!(y_low.is_strictly_low_weight());
        assert!(y_low.row_weights().iter().all(|&w| 2 * w < 12));
        assert!(is_asymmetric(&y_low.transpose()).unwrap());
    }

    #[test]
    fn column_complement_full_cover_is_empty() {
        // 2 rows: classes are {00,11} and {01,10}; both present
        let x = parse("00\n01");
        let y = column_complement(&x).unwrap();
        assert_eq!((y.row_count(), y.col_count()), (2, 0));
    }

    #[test]
    fn row_complement_of_full_cube_is_empty() {
        let x = parse("00\n01\n10\n11");
        let z = row_complement(&x).unwrap();
        assert_eq!((z.row_count(), z.col_count()), (0, 2));
    }

    #[test]
    fn row_complement_rows_sorted_and_disjoint() {
        let x = parse("101\n000");
        let z = row_complement(&x).unwrap();
        assert_eq!((z.row_count(), z.col_count()), (6, 3));
        assert_eq!(z.to_string(), "001\n010\n011\n100\n110\n111");
    }

    #[test]
    fn guards_and_precondition_errors() {
        let dup = parse("10\n10");
        assert!(matches!(
            row_complement(&dup),
            Err(Error::DuplicateRowsInInput(0, 1))
        ));
        let iso = parse("10\n01");
        assert!(matches!(
            column_complement(&iso),
            Err(Error::IsomorphicColumnsInInput(0, 1))
        ));
        let tall = BinaryMatrix::zeros(31, 1);
        assert!(matches!(
            column_complement(&tall),
            Err(Error::WidthGuardExceeded { .. })
        ));
    }

    #[test]
    fn complement_equivalence_on_random_eligible_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut tested = 0;
        while tested < 60 {
            let n = rng.gen_range(4..=8);
            let x = BinaryMatrix::from_fn(5, n, |_, _| rng.gen());
            if x.duplicate_row_pair().is_some() || x.isomorphic_column_pair().is_some() {
                continue;
            }
            tested += 1;
            let a = is_asymmetric(&x).unwrap();
            assert_eq!(a, is_asymmetric(&column_complement(&x).unwrap()).unwrap());
            assert_eq!(a, is_asymmetric(&row_complement(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn double_column_complement_restores_class_set() {
        let x = parse("1100\n0110\n0011\n0001\n0000");
        let y = column_complement(&x).unwrap();
        let z = column_complement(&y).unwrap();
        assert_eq!(z.col_count(), x.col_count());
        let classes = |m: &BinaryMatrix| {
            let mut v: Vec<Vec<bool>> = (0..m.col_count())
                .map(|j| {
                    canonical_representative(
                        &(0..m.row_count()).map(|i| m.get(i, j)).collect::<Vec<_>>(),
                    )
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(classes(&x), classes(&z));
    }
}
