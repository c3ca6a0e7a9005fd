//! Exact symmetry decision for binary matrices.
//!
//! A symmetry of X is a pair (sigma, phi) of a row permutation and a column
//! permaut with X_sigma = X^phi; X is asymmetric when only the trivial pair
//! works. The engine normalizes to low weight, applies quick accepts
//! (duplicate rows, isomorphic columns), then backtracks over the cheaper
//! side of the bipartite matching:
//!
//! * row side: sigma is enumerated within row classes keyed by the row
//!   weight over non-half columns (plain row weight when the matrix is
//!   strictly low weight); the permaut is then forced column-by-column,
//! * column side: the permaut is enumerated within column weight classes,
//!   with complement branches only on columns of weight exactly m/2; the
//!   row permutation is then forced by row matching.
//!
//! Partial assignments prune through pairwise invariants (row agreement
//! counts, column joint counts), per-column candidate masks on the row
//! side, and column-signature multiset checks at each class boundary;
//! together these keep both the wide padded matrices and the tall
//! near-complete ones tractable.

use std::collections::HashMap;

use crate::bitmatrix::{
    complement_packed, words_for, BinaryMatrix, Permaut, RowPermutation, Symmetry,
};
use crate::error::{Error, Result};

/// Budgets for the decision procedures.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Backtracking node limit for `find_symmetry`.
    pub node_budget: u64,
    /// Cap on m! * n! * 2^n for the naive oracle.
    pub oracle_budget: u64,
    /// Cap on m*n for `exhaustive_nonexistence`.
    pub max_exhaustive_bits: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 100_000_000,
            oracle_budget: fact(5) * fact(5) * 32,
            max_exhaustive_bits: 24,
        }
    }
}

fn fact(k: u64) -> u64 {
    (1..=k).product::<u64>().max(1)
}

/// Finds a nontrivial symmetry of `x`, or `None` when `x` is asymmetric.
/// Deterministic: the first certificate in the canonical search order.
pub fn find_symmetry(x: &BinaryMatrix) -> Result<Option<Symmetry>> {
    find_symmetry_with(x, &SearchConfig::default())
}

pub fn find_symmetry_with(x: &BinaryMatrix, cfg: &SearchConfig) -> Result<Option<Symmetry>> {
    let (m, n) = (x.row_count(), x.col_count());
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange(format!(
            "matrix must be nonempty, got {m}x{n}"
        )));
    }

    // Quick accepts; these certificates need no search and no normalization.
    if let Some((a, b)) = x.duplicate_row_pair() {
        let sym = Symmetry {
            sigma: RowPermutation::transposition(m, a, b),
            phi: Permaut::identity(n),
        };
        debug_assert!(sym.verifies(x));
        return Ok(Some(sym));
    }
    if let Some((a, b, complemented)) = x.isomorphic_column_pair() {
        let mut pi: Vec<usize> = (0..n).collect();
        pi.swap(a, b);
        let flips = if complemented { vec![a, b] } else { vec![] };
        let sym = Symmetry {
            sigma: RowPermutation::identity(m),
            phi: Permaut::new(pi, &flips)?,
        };
        debug_assert!(sym.verifies(x));
        return Ok(Some(sym));
    }

    let (xn, flipped) = x.normalize_low_weight();
    let alpha = Permaut::new((0..n).collect(), &flipped)?;

    let found = Engine::new(&xn, cfg.node_budget).run()?;
    Ok(found.map(|(sigma, phi_n)| {
        // conjugate back through the normalization: phi = alpha^-1 . phi_n . alpha
        let phi = alpha.inverse().compose(&phi_n.compose(&alpha));
        let sym = Symmetry { sigma, phi };
        assert!(
            sym.verifies(x),
            "symmetry certificate failed re-verification"
        );
        assert!(!sym.is_trivial());
        sym
    }))
}

/// True when only the trivial (id, id) symmetry exists.
pub fn is_asymmetric(x: &BinaryMatrix) -> Result<bool> {
    Ok(find_symmetry(x)?.is_none())
}

pub fn is_asymmetric_with(x: &BinaryMatrix, cfg: &SearchConfig) -> Result<bool> {
    Ok(find_symmetry_with(x, cfg)?.is_none())
}

struct Engine<'a> {
    x: &'a BinaryMatrix,
    m: usize,
    n: usize,
    wn: usize,
    rows: Vec<Vec<u64>>,
    not_rows: Vec<Vec<u64>>,
    cols: Vec<Vec<u64>>,
    is_half: Vec<bool>,
    col_weight: Vec<usize>,
    row_key: Vec<usize>,
    nodes: u64,
    budget: u64,
}

/// Upper size bound on the pairwise-invariant tables; above it the cheap
/// pair pruning is skipped and the class machinery carries the search.
const PAIR_TABLE_LIMIT: usize = 2048;

/// Saved pair of column-candidate masks for backtracking.
type MaskSnapshot = (Vec<Vec<u64>>, Vec<Vec<u64>>);

impl<'a> Engine<'a> {
    fn new(x: &'a BinaryMatrix, budget: u64) -> Self {
        let (m, n) = (x.row_count(), x.col_count());
        let wn = words_for(n);
        let rows: Vec<Vec<u64>> = (0..m).map(|i| x.row_words(i).to_vec()).collect();
        let not_rows = rows.iter().map(|r| complement_packed(r, n)).collect();
        let cols: Vec<Vec<u64>> = (0..n).map(|j| x.column_packed(j)).collect();
        let col_weight = x.col_weights();
        let is_half: Vec<bool> = col_weight.iter().map(|&w| 2 * w == m).collect();
        // Row key: weight over the non-half columns. A symmetry's sigma must
        // preserve it, since the permaut keeps non-half columns unflipped
        // and within their weight classes.
        let mut nh_mask = vec![0u64; wn];
        for j in 0..n {
            if !is_half[j] {
                nh_mask[j / 64] |= 1 << (j % 64);
            }
        }
        let row_key: Vec<usize> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&nh_mask)
                    .map(|(w, m)| (w & m).count_ones() as usize)
                    .sum()
            })
            .collect();
        Engine {
            x,
            m,
            n,
            wn,
            rows,
            not_rows,
            cols,
            is_half,
            col_weight,
            row_key,
            nodes: 0,
            budget,
        }
    }

    /// m x m table of row agreement counts #{j : u_j == v_j}; invariant
    /// under every permaut, so sigma can only match rows with identical
    /// agreement patterns against already-assigned rows.
    fn row_agreement_table(&self) -> Option<Vec<u32>> {
        if self.m > PAIR_TABLE_LIMIT {
            return None;
        }
        let mut t = vec![0u32; self.m * self.m];
        for a in 0..self.m {
            for b in a..self.m {
                let diff: u32 = self.rows[a]
                    .iter()
                    .zip(&self.rows[b])
                    .map(|(x, y)| (x ^ y).count_ones())
                    .sum();
                let agree = self.n as u32 - diff;
                t[a * self.m + b] = agree;
                t[b * self.m + a] = agree;
            }
        }
        Some(t)
    }

    /// n x n table of column joint counts #{k : u_k = v_k = 1}; combined
    /// with the column weights it pins the full 2x2 joint distribution,
    /// which any row permutation preserves.
    fn col_join_table(&self) -> Option<Vec<u32>> {
        if self.n > PAIR_TABLE_LIMIT {
            return None;
        }
        let mut t = vec![0u32; self.n * self.n];
        for a in 0..self.n {
            for b in a..self.n {
                let both: u32 = self.cols[a]
                    .iter()
                    .zip(&self.cols[b])
                    .map(|(x, y)| (x & y).count_ones())
                    .sum();
                t[a * self.n + b] = both;
                t[b * self.n + a] = both;
            }
        }
        Some(t)
    }

    /// Joint ones-count of columns (l xor f, l' xor f') from the unflipped
    /// table by inclusion-exclusion.
    fn adjusted_join(&self, join: &[u32], l: usize, f: bool, lp: usize, fp: bool) -> u32 {
        let n11 = join[l * self.n + lp];
        let (wl, wlp) = (self.col_weight[l] as u32, self.col_weight[lp] as u32);
        match (f, fp) {
            (false, false) => n11,
            (true, false) => wlp - n11,
            (false, true) => wl - n11,
            (true, true) => self.m as u32 - wl - wlp + n11,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::SearchBudgetExceeded(self.nodes))
        } else {
            Ok(())
        }
    }

    fn run(&mut self) -> Result<Option<(RowPermutation, Permaut)>> {
        let row_classes = group_by_key(&self.row_key);
        let col_classes = group_by_key(&self.col_weight);
        let log_rows: f64 = row_classes.iter().map(|c| log_factorial(c.len())).sum();
        let half_count = self.is_half.iter().filter(|&&h| h).count();
        let log_cols: f64 = col_classes
            .iter()
            .map(|c| log_factorial(c.len()))
            .sum::<f64>()
            + half_count as f64 * std::f64::consts::LN_2;
        if log_rows <= log_cols {
            self.search_row_side(&row_classes)
        } else {
            self.search_col_side(&col_classes)
        }
    }

    // ---- row side: enumerate sigma, derive phi ----

    fn search_row_side(
        &mut self,
        classes: &[Vec<usize>],
    ) -> Result<Option<(RowPermutation, Permaut)>> {
        let order: Vec<usize> = classes.iter().flatten().copied().collect();
        let boundaries: Vec<usize> = classes
            .iter()
            .scan(0, |acc, c| {
                *acc += c.len();
                Some(*acc)
            })
            .collect();
        let class_of: Vec<usize> = {
            let mut v = vec![0; self.m];
            for (ci, c) in classes.iter().enumerate() {
                for &i in c {
                    v[i] = ci;
                }
            }
            v
        };

        // mask0[l] / mask1[l]: candidate target positions j for column l under
        // an unflipped / flipped match, given the sigma assignments so far.
        let mut class_mask: Vec<Vec<u64>> = Vec::new();
        {
            let col_classes = group_by_key(&self.col_weight);
            let mut mask_of_class = HashMap::new();
            for c in &col_classes {
                let mut mask = vec![0u64; self.wn];
                for &j in c {
                    mask[j / 64] |= 1 << (j % 64);
                }
                mask_of_class.insert(self.col_weight[c[0]], mask);
            }
            for l in 0..self.n {
                class_mask.push(mask_of_class[&self.col_weight[l]].clone());
            }
        }
        let mut mask0: Vec<Vec<u64>> = class_mask.clone();
        let mut mask1: Vec<Vec<u64>> = (0..self.n)
            .map(|l| {
                if self.is_half[l] {
                    class_mask[l].clone()
                } else {
                    vec![0u64; self.wn]
                }
            })
            .collect();

        let agree = self.row_agreement_table();
        let mut sigma = vec![usize::MAX; self.m];
        let mut used = vec![false; self.m];
        let mut assigned: Vec<(usize, usize)> = Vec::with_capacity(self.m);
        let mut stack: Vec<MaskSnapshot> = Vec::new();

        let mut depth = 0usize;
        // iterative DFS with explicit candidate cursors
        let mut cursors: Vec<usize> = vec![0; self.m + 1];
        loop {
            if depth == self.m {
                if let Some(found) = self.try_complete_sigma(&sigma)? {
                    return Ok(Some(found));
                }
                // backtrack
                if depth == 0 {
                    return Ok(None);
                }
                depth -= 1;
                let src = order[depth];
                used[sigma[src]] = false;
                sigma[src] = usize::MAX;
                assigned.pop();
                let (m0, m1) = stack.pop().unwrap();
                mask0 = m0;
                mask1 = m1;
                continue;
            }
            let src = order[depth];
            let members = &classes[class_of[src]];
            let mut advanced = false;
            while cursors[depth] < members.len() {
                let tgt = members[cursors[depth]];
                cursors[depth] += 1;
                if used[tgt] {
                    continue;
                }
                if let Some(t) = &agree {
                    // agreement counts with already-matched rows must line up
                    let ok = assigned
                        .iter()
                        .all(|&(s0, t0)| t[src * self.m + s0] == t[tgt * self.m + t0]);
                    if !ok {
                        continue;
                    }
                }
                self.tick()?;
                // try sigma(src) = tgt
                stack.push((mask0.clone(), mask1.clone()));
                if self.assign_row(src, tgt, &mut mask0, &mut mask1)
                    && (boundaries.binary_search(&(depth + 1)).is_err()
                        || self.row_boundary_ok(&sigma, src, tgt))
                {
                    sigma[src] = tgt;
                    used[tgt] = true;
                    assigned.push((src, tgt));
                    depth += 1;
                    cursors[depth] = 0;
                    advanced = true;
                    break;
                }
                let (m0, m1) = stack.pop().unwrap();
                mask0 = m0;
                mask1 = m1;
            }
            if advanced {
                continue;
            }
            // exhausted candidates at this depth
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            let src = order[depth];
            used[sigma[src]] = false;
            sigma[src] = usize::MAX;
            assigned.pop();
            let (m0, m1) = stack.pop().unwrap();
            mask0 = m0;
            mask1 = m1;
        }
    }

    /// Narrows the column candidate masks for the assignment sigma(src) = tgt.
    /// Returns false when some column loses its last candidate.
    fn assign_row(
        &self,
        src: usize,
        tgt: usize,
        mask0: &mut [Vec<u64>],
        mask1: &mut [Vec<u64>],
    ) -> bool {
        for l in 0..self.n {
            let bit = self.x.get(tgt, l);
            let keep0 = if bit {
                &self.rows[src]
            } else {
                &self.not_rows[src]
            };
            let mut alive = 0u64;
            for (w, k) in mask0[l].iter_mut().zip(keep0) {
                *w &= k;
                alive |= *w;
            }
            if self.is_half[l] {
                let keep1 = if bit {
                    &self.not_rows[src]
                } else {
                    &self.rows[src]
                };
                for (w, k) in mask1[l].iter_mut().zip(keep1) {
                    *w &= k;
                    alive |= *w;
                }
            }
            if alive == 0 {
                return false;
            }
        }
        true
    }

    /// Column-signature multiset check at a row-class boundary: within every
    /// column weight class, the multiset of columns restricted to the already
    /// assigned target rows must match the multiset the permaut needs.
    /// Signatures are truncated to 64 assigned rows; the check stays sound,
    /// only slightly weaker on matrices taller than that.
    fn row_boundary_ok(&self, sigma: &[usize], last_src: usize, last_tgt: usize) -> bool {
        let mut pairs: Vec<(usize, usize)> = sigma
            .iter()
            .enumerate()
            .filter(|(_, &t)| t != usize::MAX)
            .map(|(s, &t)| (s, t))
            .collect();
        pairs.push((last_src, last_tgt));
        pairs.sort_by_key(|&(_, t)| t);
        pairs.truncate(64);
        let bits = pairs.len();
        let full: u64 = if bits == 64 {
            u64::MAX
        } else {
            (1 << bits) - 1
        };
        // (weight-class key, signature) pairs for both sides
        let mut actual: Vec<(usize, u64)> = Vec::with_capacity(self.n);
        let mut required: Vec<(usize, u64)> = Vec::with_capacity(self.n);
        for l in 0..self.n {
            let mut a = 0u64;
            let mut r = 0u64;
            for (pos, &(s, t)) in pairs.iter().enumerate() {
                a |= (self.x.get(t, l) as u64) << pos;
                r |= (self.x.get(s, l) as u64) << pos;
            }
            if self.is_half[l] {
                a = a.min(!a & full);
                r = r.min(!r & full);
            }
            actual.push((self.col_weight[l], a));
            required.push((self.col_weight[l], r));
        }
        actual.sort_unstable();
        required.sort_unstable();
        actual == required
    }

    /// With sigma fully assigned, the permaut is forced: each column of
    /// X_sigma must equal a column of X or its complement. Returns the
    /// verified nontrivial pair, if the forced permaut exists.
    fn try_complete_sigma(&mut self, sigma: &[usize]) -> Result<Option<(RowPermutation, Permaut)>> {
        let sigma = RowPermutation::new(sigma.to_vec()).expect("search built a bijection");
        if sigma.is_identity() {
            // no duplicate rows and no isomorphic columns: phi would be trivial
            return Ok(None);
        }
        let xs = self.x.permute_rows(&sigma)?;
        let mut index: HashMap<&[u64], usize> = HashMap::new();
        for (l, c) in self.cols.iter().enumerate() {
            index.insert(c.as_slice(), l);
        }
        let mut pi = vec![usize::MAX; self.n];
        let mut flips = vec![false; self.n];
        for j in 0..self.n {
            let d = xs.column_packed(j);
            if let Some(&l) = index.get(d.as_slice()) {
                if pi[l] != usize::MAX {
                    return Ok(None);
                }
                pi[l] = j;
            } else {
                let dc = complement_packed(&d, self.m);
                match index.get(dc.as_slice()) {
                    Some(&l) if pi[l] == usize::MAX => {
                        pi[l] = j;
                        flips[l] = true;
                    }
                    _ => return Ok(None),
                }
            }
        }
        let phi = Permaut::from_parts(pi, flips);
        if self.x.apply_permaut(&phi)? == xs {
            Ok(Some((sigma, phi)))
        } else {
            Ok(None)
        }
    }

    // ---- column side: enumerate phi, derive sigma ----

    fn search_col_side(
        &mut self,
        classes: &[Vec<usize>],
    ) -> Result<Option<(RowPermutation, Permaut)>> {
        let order: Vec<usize> = classes.iter().flatten().copied().collect();
        let boundaries: Vec<usize> = classes
            .iter()
            .scan(0, |acc, c| {
                *acc += c.len();
                Some(*acc)
            })
            .collect();
        let class_of: Vec<usize> = {
            let mut v = vec![0; self.n];
            for (ci, c) in classes.iter().enumerate() {
                for &j in c {
                    v[j] = ci;
                }
            }
            v
        };

        let join = self.col_join_table();
        let mut pi = vec![usize::MAX; self.n];
        let mut flips = vec![false; self.n];
        let mut used = vec![false; self.n];
        let mut assigned: Vec<(usize, usize, bool)> = Vec::with_capacity(self.n);
        // candidate list per depth: (target, flip)
        let mut cursors: Vec<usize> = vec![0; self.n + 1];

        let mut depth = 0usize;
        loop {
            if depth == self.n {
                if let Some(found) = self.try_complete_phi(&pi, &flips)? {
                    return Ok(Some(found));
                }
                if depth == 0 {
                    return Ok(None);
                }
                depth -= 1;
                let src = order[depth];
                used[pi[src]] = false;
                pi[src] = usize::MAX;
                flips[src] = false;
                assigned.pop();
                continue;
            }
            let src = order[depth];
            let members = &classes[class_of[src]];
            let branch = if self.is_half[src] { 2 } else { 1 };
            let mut advanced = false;
            while cursors[depth] < members.len() * branch {
                let tgt = members[cursors[depth] / branch];
                let flip = cursors[depth] % branch == 1;
                cursors[depth] += 1;
                if used[tgt] {
                    continue;
                }
                if let Some(t) = &join {
                    // the 2x2 joint distribution of any column pair is
                    // preserved by the row permutation, after flips
                    let ok = assigned.iter().all(|&(l0, j0, f0)| {
                        self.adjusted_join(t, src, flip, l0, f0) == t[tgt * self.n + j0]
                    });
                    if !ok {
                        continue;
                    }
                }
                self.tick()?;
                if boundaries.binary_search(&(depth + 1)).is_err()
                    || self.col_boundary_ok(&pi, &flips, src, tgt, flip)
                {
                    pi[src] = tgt;
                    flips[src] = flip;
                    used[tgt] = true;
                    assigned.push((src, tgt, flip));
                    depth += 1;
                    cursors[depth] = 0;
                    advanced = true;
                    break;
                }
            }
            if advanced {
                continue;
            }
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            let src = order[depth];
            used[pi[src]] = false;
            pi[src] = usize::MAX;
            flips[src] = false;
            assigned.pop();
        }
    }

    /// Row-signature multiset check at a column-class boundary, truncated
    /// to 64 assigned columns (sound, slightly weaker beyond that).
    fn col_boundary_ok(
        &self,
        pi: &[usize],
        flips: &[bool],
        last_src: usize,
        last_tgt: usize,
        last_flip: bool,
    ) -> bool {
        let mut assigned: Vec<(usize, usize, bool)> = pi
            .iter()
            .enumerate()
            .filter(|(_, &t)| t != usize::MAX)
            .map(|(s, &t)| (s, t, flips[s]))
            .collect();
        assigned.push((last_src, last_tgt, last_flip));
        assigned.sort_by_key(|&(_, t, _)| t);
        assigned.truncate(64);
        let mut actual: Vec<u64> = Vec::with_capacity(self.m);
        let mut required: Vec<u64> = Vec::with_capacity(self.m);
        for k in 0..self.m {
            let mut a = 0u64;
            let mut r = 0u64;
            for (pos, &(s, t, f)) in assigned.iter().enumerate() {
                a |= (self.x.get(k, t) as u64) << pos;
                r |= ((self.x.get(k, s) ^ f) as u64) << pos;
            }
            actual.push(a);
            required.push(r);
        }
        actual.sort_unstable();
        required.sort_unstable();
        actual == required
    }

    /// With the permaut fully assigned, sigma is forced by matching rows.
    fn try_complete_phi(
        &mut self,
        pi: &[usize],
        flips: &[bool],
    ) -> Result<Option<(RowPermutation, Permaut)>> {
        let flip_set: Vec<usize> = (0..self.n).filter(|&l| flips[l]).collect();
        let phi = Permaut::new(pi.to_vec(), &flip_set).expect("search built a bijection");
        let xp = self.x.apply_permaut(&phi)?;
        let mut index: HashMap<&[u64], usize> = HashMap::new();
        for i in 0..self.m {
            index.insert(self.x.row_words(i), i);
        }
        // X^phi row k = X row sigma^-1(k)
        let mut sigma_inv = vec![usize::MAX; self.m];
        for k in 0..self.m {
            match index.get(xp.row_words(k)) {
                Some(&i) if !sigma_inv.contains(&i) => sigma_inv[k] = i,
                _ => return Ok(None),
            }
        }
        let sigma = RowPermutation::new(sigma_inv)
            .expect("row matching built a bijection")
            .inverse();
        if sigma.is_identity() && phi.is_identity() {
            return Ok(None);
        }
        if self.x.permute_rows(&sigma)? == xp {
            Ok(Some((sigma, phi)))
        } else {
            Ok(None)
        }
    }
}

fn group_by_key(keys: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut of_key: HashMap<usize, usize> = HashMap::new();
    for (i, &k) in keys.iter().enumerate() {
        if let Some(&ci) = of_key.get(&k) {
            classes[ci].push(i);
        } else {
            of_key.insert(k, classes.len());
            classes.push(vec![i]);
        }
    }
    classes
}

fn log_factorial(k: usize) -> f64 {
    (2..=k).map(|v| (v as f64).ln()).sum()
}

/// Literal enumeration of every (sigma, pi, flip-set) triple. Only for
/// cross-checking the engine; budgeted by m! * n! * 2^n.
pub fn naive_symmetry_oracle(x: &BinaryMatrix) -> Result<Option<Symmetry>> {
    naive_symmetry_oracle_with(x, &SearchConfig::default())
}

pub fn naive_symmetry_oracle_with(
    x: &BinaryMatrix,
    cfg: &SearchConfig,
) -> Result<Option<Symmetry>> {
    let (m, n) = (x.row_count(), x.col_count());
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange(format!(
            "matrix must be nonempty, got {m}x{n}"
        )));
    }
    let work = if m > 20 || n > 20 {
        None
    } else {
        fact(m as u64)
            .checked_mul(fact(n as u64))
            .and_then(|a| a.checked_mul(1u64 << n))
    };
    match work {
        Some(w) if w <= cfg.oracle_budget => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "oracle needs m!*n!*2^n > {} for {m}x{n}",
                cfg.oracle_budget
            )))
        }
    }

    let rows: Vec<Vec<u64>> = (0..m).map(|i| x.row_words(i).to_vec()).collect();
    let mut pi: Vec<usize> = (0..n).collect();
    loop {
        for fbits in 0u64..(1 << n) {
            let flips: Vec<bool> = (0..n).map(|l| (fbits >> l) & 1 == 1).collect();
            let phi = Permaut::from_parts(pi.clone(), flips);
            let xp = x.apply_permaut(&phi)?;
            let xp_rows: Vec<Vec<u64>> = (0..m).map(|i| xp.row_words(i).to_vec()).collect();
            let mut sigma: Vec<usize> = (0..m).collect();
            loop {
                // X_sigma row k = X row sigma^-1(k); compare via images instead
                let matches = (0..m).all(|i| xp_rows[sigma[i]] == rows[i]);
                if matches {
                    let s = RowPermutation::new(sigma.clone())?;
                    if !(s.is_identity() && phi.is_identity()) {
                        let sym = Symmetry { sigma: s, phi };
                        debug_assert!(sym.verifies(x));
                        return Ok(Some(sym));
                    }
                }
                if !next_permutation(&mut sigma) {
                    break;
                }
            }
        }
        if !next_permutation(&mut pi) {
            break;
        }
    }
    Ok(None)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// True when no m x n binary matrix is asymmetric, by enumerating all
/// 2^(m*n) matrices (bit k of the counter is entry (k/n, k%n)).
pub fn exhaustive_nonexistence(m: usize, n: usize) -> Result<bool> {
    exhaustive_nonexistence_with(m, n, &SearchConfig::default(), &mut |_, _| {})
}

pub fn exhaustive_nonexistence_with(
    m: usize,
    n: usize,
    cfg: &SearchConfig,
    progress: &mut dyn FnMut(u64, u64),
) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange(format!(
            "need positive dimensions, got {m}x{n}"
        )));
    }
    let bits = m * n;
    if bits as u32 > cfg.max_exhaustive_bits {
        return Err(Error::BudgetExceeded(format!(
            "{m}x{n} needs {bits} bits > max of {}",
            cfg.max_exhaustive_bits
        )));
    }
    let total: u64 = 1 << bits;
    let row_mask: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut row_buf = vec![0u64; m];
    let mut col_buf = vec![0u64; n];
    'outer: for g in 0..total {
        if g % (1 << 20) == 0 {
            progress(g, total);
        }
        // duplicate-row reject
        for (i, slot) in row_buf.iter_mut().enumerate() {
            *slot = (g >> (i * n)) & row_mask;
        }
        row_buf.sort_unstable();
        for i in 1..m {
            if row_buf[i] == row_buf[i - 1] {
                continue 'outer;
            }
        }
        // isomorphic-column reject
        let col_mask: u64 = if m == 64 { u64::MAX } else { (1 << m) - 1 };
        for (j, slot) in col_buf.iter_mut().enumerate() {
            let mut c = 0u64;
            for i in 0..m {
                c |= ((g >> (i * n + j)) & 1) << i;
            }
            *slot = c.min(!c & col_mask);
        }
        col_buf.sort_unstable();
        for j in 1..n {
            if col_buf[j] == col_buf[j - 1] {
                continue 'outer;
            }
        }
        let x = BinaryMatrix::from_fn(m, n, |i, j| (g >> (i * n + j)) & 1 == 1);
        if find_symmetry_with(&x, cfg)?.is_none() {
            progress(total, total);
            return Ok(false);
        }
    }
    progress(total, total);
    Ok(true)
}
