//! Bit-packed binary matrices and the two group actions on them: row
//! permutations and column permauts (permutation plus per-column complement).
//!
//! Rows are packed LSB-first into `u64` words, so row equality and column
//! extraction are word operations. All operations return new values; a
//! matrix is never mutated after construction.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An m x n matrix over {0,1}. Row `i`, column `j` with `i < rows`, `j < cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        BinaryMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut x = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    x.set(i, j, true);
                }
            }
        }
        x
    }

    /// Builds a matrix from rows given as bit slices (row-major).
    pub fn from_bit_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
        }
        Ok(Self::from_fn(m, n, |i, j| rows[i][j]))
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let w = self.bits[i * self.words_per_row + j / 64];
        (w >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let word = &mut self.bits[i * self.words_per_row + j / 64];
        if value {
            *word |= 1 << (j % 64);
        } else {
            *word &= !(1 << (j % 64));
        }
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn rows_equal(&self, i: usize, k: usize) -> bool {
        self.row_words(i) == self.row_words(k)
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row_weight(i)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.cols];
        for i in 0..self.rows {
            for (j, slot) in w.iter_mut().enumerate() {
                *slot += self.get(i, j) as usize;
            }
        }
        w
    }

    /// Column `j` packed over the rows, bit `i` = entry (i, j), LSB-first.
    pub fn column_packed(&self, j: usize) -> Vec<u64> {
        let mut c = vec![0u64; words_for(self.rows)];
        for i in 0..self.rows {
            if self.get(i, j) {
                c[i / 64] |= 1 << (i % 64);
            }
        }
        c
    }

    /// Every column weight at most floor(m/2).
    pub fn is_low_weight(&self) -> bool {
        self.col_weights().iter().all(|&w| 2 * w <= self.rows)
    }

    /// Every column weight strictly below m/2.
    pub fn is_strictly_low_weight(&self) -> bool {
        self.col_weights().iter().all(|&w| 2 * w < self.rows)
    }

    /// First pair of equal rows (i < k), if any.
    pub fn duplicate_row_pair(&self) -> Option<(usize, usize)> {
        use std::collections::HashMap;
        let mut seen: HashMap<&[u64], usize> = HashMap::new();
        for i in 0..self.rows {
            if let Some(&first) = seen.get(self.row_words(i)) {
                return Some((first, i));
            }
            seen.insert(self.row_words(i), i);
        }
        None
    }

    /// First pair of isomorphic columns (equal or bitwise complementary),
    /// as (j1, j2, complemented).
    pub fn isomorphic_column_pair(&self) -> Option<(usize, usize, bool)> {
        use std::collections::HashMap;
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        for j in 0..self.cols {
            let c = self.column_packed(j);
            if let Some(&first) = seen.get(&c) {
                return Some((first, j, false));
            }
            let cc = complement_packed(&c, self.rows);
            if let Some(&first) = seen.get(&cc) {
                return Some((first, j, true));
            }
            seen.insert(c, j);
        }
        None
    }

    /// New matrix with entry (i, j) moved to (j, i).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Applies a row permutation: result row `sigma(i)` equals input row `i`.
    pub fn permute_rows(&self, sigma: &RowPermutation) -> Result<Self> {
        if sigma.len() != self.rows {
            return Err(Error::DimensionMismatch {
                perm: sigma.len(),
                have: self.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let k = sigma.image(i);
            out.bits[k * self.words_per_row..(k + 1) * self.words_per_row]
                .copy_from_slice(self.row_words(i));
        }
        Ok(out)
    }

    /// Applies a column permaut: input column `i` lands at position `pi(i)`,
    /// complemented when `i` is in the flip set.
    pub fn apply_permaut(&self, phi: &Permaut) -> Result<Self> {
        if phi.len() != self.cols {
            return Err(Error::DimensionMismatch {
                perm: phi.len(),
                have: self.cols,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for src in 0..self.cols {
            let dst = phi.pi[src];
            let flip = phi.flips[src];
            for i in 0..self.rows {
                out.set(i, dst, self.get(i, src) ^ flip);
            }
        }
        Ok(out)
    }

    /// Complements every column of weight above floor(m/2); returns the
    /// low-weight matrix together with the sorted set of flipped columns.
    pub fn normalize_low_weight(&self) -> (Self, Vec<usize>) {
        let mut out = self.clone();
        let mut flipped = Vec::new();
        for j in 0..self.cols {
            if 2 * self.col_weight(j) > self.rows {
                flipped.push(j);
                for i in 0..self.rows {
                    out.set(i, j, !self.get(i, j));
                }
            }
        }
        (out, flipped)
    }
}

/// Packed-bit complement of a length-`len` bit vector.
pub(crate) fn complement_packed(c: &[u64], len: usize) -> Vec<u64> {
    let mut out: Vec<u64> = c.iter().map(|w| !w).collect();
    let tail = len % 64;
    if tail != 0 {
        if let Some(last) = out.last_mut() {
            *last &= (1u64 << tail) - 1;
        }
    }
    out
}

/// Side-by-side concatenation `XY`, with the preconditions under which
/// asymmetry of `X` carries over: equal row counts, no isomorphic column
/// pair inside `Y`, and no column weight shared between `X` and `Y`.
pub fn concat_columns_checked(x: &BinaryMatrix, y: &BinaryMatrix) -> Result<BinaryMatrix> {
    if x.row_count() != y.row_count() {
        return Err(Error::RowCountMismatch(x.row_count(), y.row_count()));
    }
    if let Some((a, b, _)) = y.isomorphic_column_pair() {
        return Err(Error::IsomorphicColumnsInY(a, b));
    }
    let xw: std::collections::HashSet<usize> = x.col_weights().into_iter().collect();
    for w in y.col_weights() {
        if xw.contains(&w) {
            return Err(Error::WeightCollision(w));
        }
    }
    let m = x.row_count();
    let (r, s) = (x.col_count(), y.col_count());
    Ok(BinaryMatrix::from_fn(m, r + s, |i, j| {
        if j < r {
            x.get(i, j)
        } else {
            y.get(i, j - r)
        }
    }))
}

/// Stacked concatenation of `X` over `Z`, with the preconditions under which
/// asymmetry of `X` carries over: equal column counts, distinct rows inside
/// `Z`, no row weight shared between `X` and `Z`, and no column of the stack
/// with weight exactly (k+l)/2.
pub fn concat_rows_checked(x: &BinaryMatrix, z: &BinaryMatrix) -> Result<BinaryMatrix> {
    if x.col_count() != z.col_count() {
        return Err(Error::ColCountMismatch(x.col_count(), z.col_count()));
    }
    if let Some((a, b)) = z.duplicate_row_pair() {
        return Err(Error::DuplicateRowsInZ(a, b));
    }
    let xw: std::collections::HashSet<usize> = x.row_weights().into_iter().collect();
    for w in z.row_weights() {
        if xw.contains(&w) {
            return Err(Error::RowWeightCollision(w));
        }
    }
    let (k, l) = (x.row_count(), z.row_count());
    let n = x.col_count();
    let stacked =
        BinaryMatrix::from_fn(
            k + l,
            n,
            |i, j| {
                if i < k {
                    x.get(i, j)
                } else {
                    z.get(i - k, j)
                }
            },
        );
    if (k + l) % 2 == 0 {
        let half = (k + l) / 2;
        for (j, w) in stacked.col_weights().into_iter().enumerate() {
            if w == half {
                return Err(Error::HalfWeightColumn(j, k + l));
            }
        }
    }
    Ok(stacked)
}

/// A bijection on row indices; `image(i)` is where input row `i` lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPermutation {
    map: Vec<usize>,
}

impl RowPermutation {
    pub fn identity(m: usize) -> Self {
        RowPermutation {
            map: (0..m).collect(),
        }
    }

    pub fn new(map: Vec<usize>) -> Result<Self> {
        let m = map.len();
        let mut seen = vec![false; m];
        for &v in &map {
            if v >= m || seen[v] {
                return Err(Error::Parse(format!("invalid permutation image {v}")));
            }
            seen[v] = true;
        }
        Ok(RowPermutation { map })
    }

    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut map: Vec<usize> = (0..m).collect();
        map.swap(a, b);
        RowPermutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` after `first`: (tau.compose(sigma))(i) = tau(sigma(i)).
    pub fn compose(&self, first: &RowPermutation) -> RowPermutation {
        RowPermutation {
            map: first.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> RowPermutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        RowPermutation { map: inv }
    }
}

/// Column action: a permutation of column positions plus a set of columns
/// complemented in transit. `pi[i]` is the destination of input column `i`;
/// `flips[i]` complements that column's entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permaut {
    pi: Vec<usize>,
    flips: Vec<bool>,
}

impl Permaut {
    pub fn identity(n: usize) -> Self {
        Permaut {
            pi: (0..n).collect(),
            flips: vec![false; n],
        }
    }

    pub fn new(pi: Vec<usize>, flip_columns: &[usize]) -> Result<Self> {
        let n = pi.len();
        let mut seen = vec![false; n];
        for &v in &pi {
            if v >= n || seen[v] {
                return Err(Error::Parse(format!("invalid permaut image {v}")));
            }
            seen[v] = true;
        }
        let mut flips = vec![false; n];
        for &c in flip_columns {
            if c >= n {
                return Err(Error::Parse(format!("flip column {c} out of range")));
            }
            flips[c] = true;
        }
        Ok(Permaut { pi, flips })
    }

    pub(crate) fn from_parts(pi: Vec<usize>, flips: Vec<bool>) -> Self {
        debug_assert_eq!(pi.len(), flips.len());
        Permaut { pi, flips }
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// Sorted list of complemented columns.
    pub fn flip_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.flips[i]).collect()
    }

    pub fn flips_column(&self, i: usize) -> bool {
        self.flips[i]
    }

    pub fn is_identity(&self) -> bool {
        self.pi.iter().enumerate().all(|(i, &v)| i == v) && self.flips.iter().all(|&f| !f)
    }

    /// `self` after `first`: X^(self.compose(first)) = (X^first)^self.
    pub fn compose(&self, first: &Permaut) -> Permaut {
        let n = self.len();
        let mut pi = vec![0; n];
        let mut flips = vec![false; n];
        for i in 0..n {
            pi[i] = self.pi[first.pi[i]];
            flips[i] = first.flips[i] ^ self.flips[first.pi[i]];
        }
        Permaut { pi, flips }
    }

    pub fn inverse(&self) -> Permaut {
        let n = self.len();
        let mut pi = vec![0; n];
        let mut flips = vec![false; n];
        for i in 0..n {
            pi[self.pi[i]] = i;
            flips[self.pi[i]] = self.flips[i];
        }
        Permaut { pi, flips }
    }
}

/// A certificate (sigma, phi) with X_sigma = X^phi for the matrix it was
/// produced from. Nontrivial when either part is not the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub sigma: RowPermutation,
    pub phi: Permaut,
}

impl Symmetry {
    pub fn is_trivial(&self) -> bool {
        self.sigma.is_identity() && self.phi.is_identity()
    }

    /// Re-checks the certificate by applying both actions.
    pub fn verifies(&self, x: &BinaryMatrix) -> bool {
        match (x.permute_rows(&self.sigma), x.apply_permaut(&self.phi)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for BinaryMatrix {
    /// Canonical text form: one row per line of '0'/'1' characters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({}x{})\n{}", self.rows, self.cols, self)
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    /// Parses the canonical text form: optional leading '#' comment lines,
    /// then rows of '0'/'1' of equal length.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<Vec<bool>> = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                return Err(Error::Parse(format!("blank line {}", lineno + 1)));
            }
            let mut row = Vec::with_capacity(line.len());
            for ch in line.chars() {
                match ch {
                    '0' => row.push(false),
                    '1' => row.push(true),
                    other => {
                        return Err(Error::Parse(format!(
                            "line {}: unexpected character {other:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("no matrix rows found".into()));
        }
        BinaryMatrix::from_bit_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn parse(s: &str) -> BinaryMatrix {
        s.trim().parse().unwrap()
    }

    #[test]
    fn identity_row_permutation_is_noop() {
        let x = parse("10\n01");
        let y = x.permute_rows(&RowPermutation::identity(2)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn swapping_rows_of_identity() {
        let x = parse("10\n01");
        let y = x
            .permute_rows(&RowPermutation::transposition(2, 0, 1))
            .unwrap();
        assert_eq!(y, parse("01\n10"));
    }

    #[test]
    fn identity_permaut_is_noop() {
        let x = parse("101\n110");
        assert_eq!(x.apply_permaut(&Permaut::identity(3)).unwrap(), x);
    }

    #[test]
    fn single_column_flip() {
        let x = parse("0\n1");
        let phi = Permaut::new(vec![0], &[0]).unwrap();
        assert_eq!(x.apply_permaut(&phi).unwrap(), parse("1\n0"));
    }

    #[test]
    fn permutation_dimension_mismatch() {
        let x = parse("10\n01");
        assert!(matches!(
            x.permute_rows(&RowPermutation::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            x.apply_permaut(&Permaut::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn transpose_moves_entries() {
        let x = parse("110\n001");
        assert_eq!(x.transpose(), parse("10\n10\n01"));
        assert_eq!(x.transpose().transpose(), x);
    }

    #[test]
    fn normalize_low_weight_cases() {
        let x = parse("10\n10\n00\n00");
        // both columns already at or below floor(m/2)
        let (y, f) = x.normalize_low_weight();
        assert_eq!(y, x);
        assert!(f.is_empty());

        let ones = parse("1\n1\n1\n1\n1");
        let (y, f) = ones.normalize_low_weight();
        assert_eq!(y, parse("0\n0\n0\n0\n0"));
        assert_eq!(f, vec![0]);

        // weight exactly m/2 is untouched
        let half = parse("1\n1\n0\n0");
        let (y, f) = half.normalize_low_weight();
        assert_eq!(y, half);
        assert!(f.is_empty());

        // idempotent
        let mixed = parse("11\n10\n10\n10\n10");
        let (y1, _) = mixed.normalize_low_weight();
        let (y2, f2) = y1.normalize_low_weight();
        assert_eq!(y1, y2);
        assert!(f2.is_empty());
    }

    #[test]
    fn concat_columns_rejects_weight_collision() {
        let x = parse("11\n10\n00");
        let y = parse("0\n1\n1"); // weight 2 collides with column 0 of x
        assert!(matches!(
            concat_columns_checked(&x, &y),
            Err(Error::WeightCollision(2))
        ));
    }

    #[test]
    fn concat_columns_rejects_isomorphic_pair_in_y() {
        let x = parse("1\n0\n0");
        let y = parse("10\n01\n01"); // columns complementary
        assert!(matches!(
            concat_columns_checked(&x, &y),
            Err(Error::IsomorphicColumnsInY(0, 1))
        ));
    }

    #[test]
    fn concat_rows_rejects_duplicates_and_half_weight() {
        let x = parse("110\n011");
        let z = parse("111\n111");
        assert!(matches!(
            concat_rows_checked(&x, &z),
            Err(Error::DuplicateRowsInZ(0, 1))
        ));
        // stack of height 4 with a column of weight 2
        let x = parse("100\n110");
        let z = parse("111\n000");
        assert!(matches!(
            concat_rows_checked(&x, &z),
            Err(Error::HalfWeightColumn(..))
        ));
    }

    #[test]
    fn concat_shapes() {
        let x = parse("10\n01\n00");
        let y = parse("1\n1\n1");
        let xy = concat_columns_checked(&x, &y).unwrap();
        assert_eq!((xy.row_count(), xy.col_count()), (3, 3));
        let z = parse("11\n00");
        let x = parse("10\n01\n00"); // row weights 1,1,0 vs z 2,0 -> collision on 0
        assert!(matches!(
            concat_rows_checked(&x, &z),
            Err(Error::RowWeightCollision(0))
        ));
    }

    fn arb_matrix(m: usize, n: usize) -> impl Strategy<Value = BinaryMatrix> {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), m)
            .prop_map(|rows| BinaryMatrix::from_bit_rows(&rows).unwrap())
    }

    fn arb_perm(m: usize) -> impl Strategy<Value = RowPermutation> {
        Just(()).prop_perturb(move |_, mut rng| {
            let mut map: Vec<usize> = (0..m).collect();
            for i in (1..m).rev() {
                let j = rng.random_range(0..=i);
                map.swap(i, j);
            }
            RowPermutation::new(map).unwrap()
        })
    }

    fn arb_permaut(n: usize) -> impl Strategy<Value = Permaut> {
        (arb_perm(n), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(p, flips)| Permaut::from_parts(p.as_slice().to_vec(), flips))
    }

    proptest! {
        #[test]
        fn row_permutation_composition_law(x in arb_matrix(4, 4), s in arb_perm(4), t in arb_perm(4)) {
            let lhs = x.permute_rows(&s).unwrap().permute_rows(&t).unwrap();
            let rhs = x.permute_rows(&t.compose(&s)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn permaut_composition_law(x in arb_matrix(5, 5), p in arb_permaut(5), q in arb_permaut(5)) {
            let lhs = x.apply_permaut(&p).unwrap().apply_permaut(&q).unwrap();
            let rhs = x.apply_permaut(&q.compose(&p)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn interchange_law(x in arb_matrix(5, 5), s in arb_perm(5), p in arb_permaut(5)) {
            let lhs = x.permute_rows(&s).unwrap().apply_permaut(&p).unwrap();
            let rhs = x.apply_permaut(&p).unwrap().permute_rows(&s).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn row_permutation_preserves_column_weights(x in arb_matrix(5, 4), s in arb_perm(5)) {
            let mut before = x.col_weights();
            let mut after = x.permute_rows(&s).unwrap().col_weights();
            before.sort_unstable();
            after.sort_unstable();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn permaut_preserves_row_distinctness(x in arb_matrix(5, 4), p in arb_permaut(4)) {
            let y = x.apply_permaut(&p).unwrap();
            for i in 0..5 {
                for k in (i + 1)..5 {
                    prop_assert_eq!(x.rows_equal(i, k), y.rows_equal(i, k));
                }
            }
        }

        #[test]
        fn transpose_is_involution(x in arb_matrix(6, 3)) {
            prop_assert_eq!(x.transpose().transpose(), x);
        }

        #[test]
        fn permaut_inverse_cancels(x in arb_matrix(4, 6), p in arb_permaut(6)) {
            let y = x.apply_permaut(&p).unwrap().apply_permaut(&p.inverse()).unwrap();
            prop_assert_eq!(x, y);
        }

        #[test]
        fn text_round_trip(x in arb_matrix(5, 7)) {
            let parsed: BinaryMatrix = x.to_string().parse().unwrap();
            prop_assert_eq!(parsed, x);
        }
    }
}
