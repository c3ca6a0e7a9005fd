//! Constructive generators of asymmetric m x n matrices: the staircase
//! family, the half-width and half-height stacks, the small-case table,
//! unused-weight padding, and the master witness construction that covers
//! every feasible (m, n) by splitting the column range into four intervals
//! and folding the upper half through the column-class complement.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bitmatrix::{concat_columns_checked, concat_rows_checked, BinaryMatrix, Permaut};
use crate::complement::{column_complement_with_guard, row_complement_with_guard};
use crate::cost::CostTable;
use crate::error::{Error, Result};
use crate::symmetry::{is_asymmetric_with, SearchConfig};

pub const DEFAULT_MEMORY_GUARD_BITS: u128 = 1 << 26;

/// Guards and verification policy for witness construction.
#[derive(Clone, Debug)]
pub struct WitnessConfig {
    /// Cap on m*n of any matrix materialized during construction.
    pub memory_guard_bits: u128,
    /// Re-check every witness with the symmetry engine, not just the
    /// small ones (m <= 12 and n <= 4096 are always re-checked).
    pub force_verify: bool,
    pub search: SearchConfig,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            memory_guard_bits: DEFAULT_MEMORY_GUARD_BITS,
            force_verify: false,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    SmallTable,
    ColumnPad,
    HalfWidthPad,
    StaircasePad,
    Complement,
    RowDirection,
    TransposeTrick,
}

/// How a witness was produced, with the checked preconditions on record.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionPlan {
    pub case: CaseTag,
    pub r: usize,
    pub s: usize,
    pub base: (usize, usize),
    pub audit: Vec<String>,
}

impl ConstructionPlan {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plan serialization cannot fail")
    }
}

/// The m x m staircase (or its m x (m-1) prefix): column 0 is e_1, column j
/// has ones at rows j-1 and j. Asymmetric for every m >= 5.
pub fn staircase(m: usize, cols: usize) -> BinaryMatrix {
    assert!(
        m >= 1 && (cols == m || cols + 1 == m),
        "staircase width must be m or m-1"
    );
    BinaryMatrix::from_fn(
        m,
        cols,
        |i, j| {
            if j == 0 {
                i == 0
            } else {
                i == j || i + 1 == j
            }
        },
    )
}

/// r x r circulant with zeros at offsets 0, 1, 2: row i has zeros exactly
/// at columns i, i+1, i+2 (mod r).
fn band_block(r: usize) -> BinaryMatrix {
    BinaryMatrix::from_fn(r, r, |i, j| (j + r - i) % r > 2)
}

fn append_zero_row(x: &BinaryMatrix) -> BinaryMatrix {
    BinaryMatrix::from_fn(x.row_count() + 1, x.col_count(), |i, j| {
        i < x.row_count() && x.get(i, j)
    })
}

/// Asymmetric m x floor(m/2) matrix for m >= 12: the r x r staircase
/// stacked over the band block, plus a zero row when m is odd. Strictly
/// low weight with column weights r-2 and r-1.
pub fn half_width(m: usize) -> Result<BinaryMatrix> {
    if m < 12 {
        return Err(Error::OutOfRange(format!(
            "half_width needs m >= 12, got {m}"
        )));
    }
    let r = m / 2;
    let z = if m.is_multiple_of(2) {
        band_block(r)
    } else {
        append_zero_row(&band_block(r))
    };
    concat_rows_checked(&staircase(r, r), &z)
}

/// Asymmetric floor(n/2) x n matrix for n >= 12: the s x s staircase
/// concatenated with the transpose of the band block. At s = 6 the band
/// transpose contains complementary column pairs, so the weight-3 column
/// classes are used instead.
pub fn half_height(n: usize) -> Result<BinaryMatrix> {
    if n < 12 {
        return Err(Error::OutOfRange(format!(
            "half_height needs n >= 12, got {n}"
        )));
    }
    let s = n / 2;
    let x = staircase(s, s);
    let y = if s == 6 {
        weight_class_columns(6, 3, n - s)
    } else {
        let z = if n.is_multiple_of(2) {
            band_block(s)
        } else {
            append_zero_row(&band_block(s))
        };
        z.transpose()
    };
    concat_columns_checked(&x, &y)
}

/// Matrix of `count` lexicographically-first nonisomorphic columns of
/// length m and weight w.
fn weight_class_columns(m: usize, w: usize, count: usize) -> BinaryMatrix {
    let mut out = BinaryMatrix::zeros(m, count);
    let mut iter = WeightColumns::new(m, w);
    for col in 0..count {
        let rows = iter.next().expect("caller counted availability");
        for i in rows {
            out.set(i, col, true);
        }
    }
    out
}

/// Enumerates the one-position sets of weight-w columns of length m in
/// lexicographic order of the column read top-to-bottom; for w = m/2 only
/// the class representative (top entry 0) is produced.
struct WeightColumns {
    m: usize,
    w: usize,
    // positions counted from the bottom row, strictly increasing
    q: Option<Vec<usize>>,
}

impl WeightColumns {
    fn new(m: usize, w: usize) -> Self {
        let q = if w <= m { Some((0..w).collect()) } else { None };
        WeightColumns { m, w, q }
    }

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            let q = self.q.as_mut()?;
            let current: Vec<usize> = q.iter().map(|&p| self.m - 1 - p).collect();
            // representative filter: at half weight, skip columns whose top
            // row is a one (their complements were already produced)
            let skip = 2 * self.w == self.m && q.contains(&(self.m - 1));
            // advance to the next combination in ascending numeric order
            let w = self.w;
            if w == 0 {
                self.q = None;
                return Some(current);
            }
            let mut t = 0;
            while t + 1 < w && q[t] + 1 == q[t + 1] {
                t += 1;
            }
            if q[t] + 1 >= self.m && t + 1 == w {
                self.q = None;
            } else {
                q[t] += 1;
                for (i, slot) in q.iter_mut().enumerate().take(t) {
                    *slot = i;
                }
                if q[w - 1] >= self.m {
                    self.q = None;
                }
            }
            if !skip {
                return Some(current);
            }
        }
    }
}

fn binom_capped(m: usize, w: usize, cap: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..w {
        acc = acc.saturating_mul((m - i) as u128) / (i as u128 + 1);
        if acc >= cap {
            return cap;
        }
    }
    acc
}

fn pad_columns_available(m: usize, used: &HashSet<usize>, cap: u128) -> u128 {
    let mut total: u128 = 0;
    for w in 0..=m / 2 {
        if used.contains(&w) {
            continue;
        }
        let classes = if 2 * w == m {
            binom_capped(m, w, cap.saturating_mul(2)) / 2
        } else {
            binom_capped(m, w, cap)
        };
        total = total.saturating_add(classes);
        if total >= cap {
            return cap;
        }
    }
    total
}

/// Concatenates `j` lexicographically-first nonisomorphic low-weight
/// columns whose weights do not occur in `x`, smallest unused weight first.
/// Asymmetry of `x` carries over.
pub fn pad_with_unused_weight_columns(x: &BinaryMatrix, j: usize) -> Result<BinaryMatrix> {
    if j == 0 {
        return Ok(x.clone());
    }
    let m = x.row_count();
    let used: HashSet<usize> = x.col_weights().into_iter().collect();
    let available = pad_columns_available(m, &used, j as u128 + 1);
    if available < j as u128 {
        return Err(Error::InsufficientColumns {
            requested: j,
            available: available as usize,
        });
    }
    let mut y = BinaryMatrix::zeros(m, j);
    let mut col = 0;
    'fill: for w in 0..=m / 2 {
        if used.contains(&w) {
            continue;
        }
        let mut iter = WeightColumns::new(m, w);
        while let Some(rows) = iter.next() {
            for i in rows {
                y.set(i, col, true);
            }
            col += 1;
            if col == j {
                break 'fill;
            }
        }
    }
    concat_columns_checked(x, &y)
}

/// Stacks `j` rows of unused row weights under `x`, chosen
/// lexicographically-first (smallest unused weight first) and advanced past
/// any selection that would give the stack a column of weight (k+j)/2.
fn pad_with_unused_weight_rows(x: &BinaryMatrix, j: usize) -> Result<BinaryMatrix> {
    if j == 0 {
        return Ok(x.clone());
    }
    let n = x.col_count();
    if n > 63 {
        return Err(Error::OutOfRange(format!(
            "row padding supports up to 63 columns, got {n}"
        )));
    }
    let used: HashSet<usize> = x.row_weights().into_iter().collect();
    let weights: Vec<usize> = (0..=n).filter(|w| !used.contains(w)).collect();

    // candidate rows, encoded with column 0 at the top bit so that numeric
    // order is lexicographic order
    let mut candidates: Vec<u64> = Vec::new();
    for &w in &weights {
        let mut v: u64 = if w == 0 { 0 } else { (1 << w) - 1 };
        let limit: u64 = if n == 63 { u64::MAX >> 1 } else { (1 << n) - 1 };
        loop {
            candidates.push(v);
            if w == 0 || v == 0 {
                break;
            }
            // next value with the same popcount
            let c = v & v.wrapping_neg();
            let r = v.wrapping_add(c);
            if r > limit || r < v {
                break;
            }
            v = (((r ^ v) >> 2) / c) | r;
            if v > limit {
                break;
            }
        }
    }
    if candidates.len() < j {
        return Err(Error::InsufficientRows { requested: j });
    }

    let total = x.row_count() + j;
    let half = if total.is_multiple_of(2) {
        Some(total / 2)
    } else {
        None
    };
    let base_cw = x.col_weights();
    let bit = |v: u64, jcol: usize| (v >> (n - 1 - jcol)) & 1 == 1;

    // greedy selection in candidate order, backtracking only over the
    // half-weight-column condition on the finished stack
    let mut chosen: Vec<usize> = Vec::with_capacity(j);
    let mut cursor = 0usize;
    let mut nodes: u64 = 0;
    loop {
        if chosen.len() == j {
            let ok = match half {
                None => true,
                Some(h) => (0..n).all(|c| {
                    let w = base_cw[c] + chosen.iter().filter(|&&t| bit(candidates[t], c)).count();
                    w != h
                }),
            };
            if ok {
                break;
            }
            cursor = chosen.pop().unwrap() + 1;
            continue;
        }
        if candidates.len() - cursor < j - chosen.len() {
            match chosen.pop() {
                Some(t) => {
                    cursor = t + 1;
                    continue;
                }
                None => return Err(Error::InsufficientRows { requested: j }),
            }
        }
        nodes += 1;
        if nodes > 1_000_000 {
            return Err(Error::InsufficientRows { requested: j });
        }
        chosen.push(cursor);
        cursor += 1;
    }

    let z = BinaryMatrix::from_fn(j, n, |i, jcol| bit(candidates[chosen[i]], jcol));
    concat_rows_checked(x, &z)
}

const FIG_5X7: &str = "1100010\n0110000\n0011010\n0001100\n0000101";
const FIG_5X4: &str = "1100\n0110\n0011\n0001\n0000";
const FIG_6X4: &str = "1100\n0110\n0011\n0001\n0010\n0000";
const FIG_7X4: &str = "1100\n0110\n0011\n0001\n0010\n0100\n0000";
const FIG_8X4: &str = "1100\n0100\n1000\n0001\n1010\n1110\n0111\n0000";

/// The tabulated small asymmetric matrices: 5 x n for n in [4,7] (column
/// prefixes of the 5x7 entry), m x 4 for m in [5,8] (fixed tables), m x 4
/// for m in [9,11] (row complement of the (16-m) x 4 table with every
/// column complemented), and the 12 x 5 transpose construction. Every
/// entry is re-checked for asymmetry before it is returned.
pub fn small_table(m: usize, n: usize) -> Result<BinaryMatrix> {
    let x = small_table_unchecked(m, n)?;
    debug_assert_eq!((x.row_count(), x.col_count()), (m, n));
    if !is_asymmetric_with(&x, &SearchConfig::default())? {
        return Err(Error::ConstructionVerificationFailed { m, n });
    }
    Ok(x)
}

fn small_table_unchecked(m: usize, n: usize) -> Result<BinaryMatrix> {
    match (m, n) {
        (5, 4..=7) => {
            let full: BinaryMatrix = FIG_5X7.parse()?;
            Ok(BinaryMatrix::from_fn(5, n, |i, j| full.get(i, j)))
        }
        (5..=8, 4) => {
            let s = match m {
                5 => FIG_5X4,
                6 => FIG_6X4,
                7 => FIG_7X4,
                _ => FIG_8X4,
            };
            Ok(s.parse()?)
        }
        (9..=11, 4) => {
            let base = small_table_unchecked(16 - m, 4)?;
            let z = row_complement_with_guard(&base, 30)?;
            let flip_all = Permaut::new((0..4).collect(), &[0, 1, 2, 3])?;
            z.apply_permaut(&flip_all)
        }
        (12, 5) => {
            let y = column_complement_with_guard(&staircase(5, 4), 30)?;
            let (y_low, _) = y.normalize_low_weight();
            // strictly low weight with every row weight below 6, so
            // asymmetry transfers across the transpose
            Ok(y_low.transpose())
        }
        _ => Err(Error::NotInTable(m, n)),
    }
}

/// An asymmetric m x n matrix for every feasible pair, with the audited
/// construction plan. Infeasible exactly when n lies outside
/// [nu_m, 2^(m-1) - nu_m] (equivalently m outside [mu_n, 2^n - mu_n]).
pub fn asymmetric_witness(m: usize, n: usize) -> Result<(BinaryMatrix, ConstructionPlan)> {
    asymmetric_witness_with(m, n, &WitnessConfig::default())
}

pub fn asymmetric_witness_with(
    m: usize,
    n: usize,
    cfg: &WitnessConfig,
) -> Result<(BinaryMatrix, ConstructionPlan)> {
    if m < 5 {
        return Err(Error::Infeasible {
            m,
            n,
            bound: "every asymmetric matrix has at least 5 rows (mu_n >= 5)".into(),
        });
    }
    if n < 4 {
        return Err(Error::Infeasible {
            m,
            n,
            bound: "every asymmetric matrix has at least 4 columns (nu_m >= 4)".into(),
        });
    }
    let costs = CostTable::new();
    let nu = costs.nu(&BigUint::from(m))? as usize;
    let n_big = BigUint::from(n);
    if n_big < BigUint::from(nu) {
        return Err(Error::Infeasible {
            m,
            n,
            bound: format!("n < nu_{m} = {nu}"),
        });
    }
    let upper = (BigUint::from(1u8) << (m - 1)) - BigUint::from(nu);
    if n_big > upper {
        return Err(Error::Infeasible {
            m,
            n,
            bound: format!("n > 2^{} - nu_{m} = {upper}", m - 1),
        });
    }

    let builder = Builder { cfg, costs: &costs };
    builder.guard(m, n)?;
    let mut audit = Vec::new();
    let (x, case, base) = builder.witness_cols(m, n, &mut audit, 0)?;
    debug_assert_eq!((x.row_count(), x.col_count()), (m, n));

    if cfg.force_verify || (m <= 12 && n <= 4096) {
        if !is_asymmetric_with(&x, &cfg.search)? {
            return Err(Error::ConstructionVerificationFailed { m, n });
        }
        audit.push(format!("{m}x{n} witness re-checked by the symmetry engine"));
    } else {
        audit.push(format!(
            "{m}x{n} witness accepted on the audited chain above"
        ));
    }

    let plan = ConstructionPlan {
        case,
        r: m / 2,
        s: n / 2,
        base,
        audit,
    };
    Ok((x, plan))
}

struct Builder<'a> {
    cfg: &'a WitnessConfig,
    costs: &'a CostTable,
}

impl Builder<'_> {
    fn guard(&self, m: usize, n: usize) -> Result<()> {
        let bits = m as u128 * n as u128;
        if bits > self.cfg.memory_guard_bits {
            Err(Error::MemoryGuardExceeded {
                m,
                n,
                bits,
                guard: self.cfg.memory_guard_bits,
            })
        } else {
            Ok(())
        }
    }

    fn nu(&self, m: usize) -> Result<usize> {
        Ok(self.costs.nu(&BigUint::from(m))? as usize)
    }

    fn mu(&self, n: usize) -> Result<usize> {
        Ok(self.costs.rho(&BigUint::from(n))? as usize)
    }

    /// Grows an asymmetric m x n matrix column-wise over an m-row base.
    fn witness_cols(
        &self,
        m: usize,
        n: usize,
        audit: &mut Vec<String>,
        depth: usize,
    ) -> Result<(BinaryMatrix, CaseTag, (usize, usize))> {
        assert!(depth < 64, "witness recursion failed to shrink");
        self.guard(m, n)?;
        let nu = self.nu(m)?;
        let r = m / 2;

        // tabulated bases
        if matches!((m, n), (5, 4..=7) | (5..=11, 4) | (12, 5)) {
            let x = small_table(m, n)?;
            audit.push(format!("{m}x{n}: table entry, re-checked asymmetric"));
            let tag = if (m, n) == (12, 5) {
                CaseTag::TransposeTrick
            } else {
                CaseTag::SmallTable
            };
            return Ok((x, tag, (m, n)));
        }

        if m == 5 {
            return match n {
                8 => {
                    let base = small_table(5, 7)?;
                    let x = pad_with_unused_weight_columns(&base, 1)?;
                    audit.push("5x8: 5x7 table entry padded with the zero column".into());
                    Ok((x, CaseTag::ColumnPad, (5, 7)))
                }
                _ => self.complement_case(m, n, audit, depth),
            };
        }

        if m <= 11 {
            if (5..=m.saturating_sub(2)).contains(&n) {
                let base = small_table(m, 4)?;
                let x = pad_with_unused_weight_columns(&base, n - 4)?;
                audit.push(format!(
                    "{m}x{n}: {m}x4 table entry padded with {} unused-weight columns",
                    n - 4
                ));
                return Ok((x, CaseTag::ColumnPad, (m, 4)));
            }
            if n == m - 1 || n == m {
                let x = staircase(m, n);
                audit.push(format!("{m}x{n}: staircase, asymmetric for m >= 5"));
                return Ok((x, CaseTag::StaircasePad, (m, n)));
            }
            if n > m && pow2_at_least(m - 2, n) {
                let x = pad_with_unused_weight_columns(&staircase(m, m), n - m)?;
                audit.push(format!(
                    "{m}x{n}: {m}x{m} staircase padded with {} unused-weight columns",
                    n - m
                ));
                return Ok((x, CaseTag::StaircasePad, (m, m)));
            }
            return self.complement_case(m, n, audit, depth);
        }

        // m >= 12: four intervals over n
        if n < r {
            // [nu_m, r-1]: minimal-width base from the row direction
            let base = self.witness_rows(m, nu, audit, depth + 1)?;
            let (base_low, flipped) = base.normalize_low_weight();
            if !flipped.is_empty() {
                audit.push(format!(
                    "{m}x{nu} base normalized to low weight ({} columns complemented)",
                    flipped.len()
                ));
            }
            let x = pad_with_unused_weight_columns(&base_low, n - nu)?;
            if n == nu {
                audit.push(format!("{m}x{n}: row-direction minimal-width base"));
                return Ok((x, CaseTag::RowDirection, (m, nu)));
            }
            audit.push(format!(
                "{m}x{n}: minimal-width base padded with {} unused-weight columns",
                n - nu
            ));
            return Ok((x, CaseTag::ColumnPad, (m, nu)));
        }
        if n <= m - 2 {
            // [r, m-2]: the half-width stack padded
            let base = half_width(m)?;
            audit.push(format!(
                "{m}x{r}: staircase over band rows, column weights {} and {}",
                r - 2,
                r - 1
            ));
            let x = pad_with_unused_weight_columns(&base, n - r)?;
            if n > r {
                audit.push(format!(
                    "{m}x{n}: half-width base padded with {} unused-weight columns",
                    n - r
                ));
            }
            return Ok((x, CaseTag::HalfWidthPad, (m, r)));
        }
        if n == m - 1 || n == m {
            let x = staircase(m, n);
            audit.push(format!("{m}x{n}: staircase, asymmetric for m >= 5"));
            return Ok((x, CaseTag::StaircasePad, (m, n)));
        }
        if pow2_at_least(m - 2, n) {
            // [m+1, 2^(m-2)]: staircase padded with weight >= 3 columns
            let x = pad_with_unused_weight_columns(&staircase(m, m), n - m)?;
            audit.push(format!(
                "{m}x{n}: {m}x{m} staircase padded with {} unused-weight columns",
                n - m
            ));
            return Ok((x, CaseTag::StaircasePad, (m, m)));
        }
        self.complement_case(m, n, audit, depth)
    }

    /// Upper fold: the witness for n' = 2^(m-1) - n, pushed through the
    /// column-class complement.
    fn complement_case(
        &self,
        m: usize,
        n: usize,
        audit: &mut Vec<String>,
        depth: usize,
    ) -> Result<(BinaryMatrix, CaseTag, (usize, usize))> {
        // reachable only when n > 2^(m-2), so the guard bounds m well below 128
        let n_prime = (1usize << (m - 1)) - n;
        let (source, _, _) = self.witness_cols(m, n_prime, audit, depth + 1)?;
        if m <= 12 && n_prime <= 4096 {
            if !is_asymmetric_with(&source, &self.cfg.search)? {
                return Err(Error::ConstructionVerificationFailed { m, n: n_prime });
            }
            audit.push(format!(
                "{m}x{n_prime} complement source re-checked asymmetric"
            ));
        }
        let x = column_complement_with_guard(&source, m.max(30))?;
        audit.push(format!(
            "{m}x{n}: column-class complement of the {m}x{n_prime} source"
        ));
        Ok((x, CaseTag::Complement, (m, n_prime)))
    }

    /// Grows an asymmetric m x n matrix row-wise over an n-column base;
    /// used for minimal-width bases, with the roles of rows and columns
    /// swapped relative to the column direction.
    fn witness_rows(
        &self,
        m: usize,
        n: usize,
        audit: &mut Vec<String>,
        depth: usize,
    ) -> Result<BinaryMatrix> {
        assert!(depth < 64, "witness recursion failed to shrink");
        self.guard(m, n)?;
        let mu = self.mu(n)?;
        debug_assert!(m >= mu);

        if m <= n {
            let (base, _, _) = self.witness_cols(mu, n, audit, depth + 1)?;
            let x = pad_with_unused_weight_rows(&base, m - mu)?;
            audit.push(format!(
                "{m}x{n}: {mu}x{n} base stacked with {} unused-weight rows",
                m - mu
            ));
            return Ok(x);
        }
        if pow2_at_least(n - 1, m) {
            let base = staircase(n + 1, n);
            let x = pad_with_unused_weight_rows(&base, m - (n + 1))?;
            audit.push(format!(
                "{m}x{n}: {}x{n} staircase stacked with {} unused-weight rows",
                n + 1,
                m - (n + 1)
            ));
            return Ok(x);
        }
        // upper fold through the row complement; n < 64 here since m > 2^(n-1)
        let m_prime = (1usize << n) - m;
        let source = self.witness_rows(m_prime, n, audit, depth + 1)?;
        if m_prime <= 4096 && n <= 12 && !is_asymmetric_with(&source, &self.cfg.search)? {
            return Err(Error::ConstructionVerificationFailed { m: m_prime, n });
        }
        let x = row_complement_with_guard(&source, n.max(30))?;
        audit.push(format!(
            "{m}x{n}: row complement of the {m_prime}x{n} source"
        ));
        Ok(x)
    }
}

/// True when k < 128 allows the comparison and value <= 2^k; for k >= 64
/// any usize value fits.
fn pow2_at_least(k: usize, value: usize) -> bool {
    if k >= 64 {
        true
    } else {
        (value as u128) <= (1u128 << k)
    }
}
