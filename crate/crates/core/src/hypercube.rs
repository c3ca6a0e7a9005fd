//! The vertex-level view: ordered vertex sets of Q_n, their characteristic
//! matrices, distinguishing-class verification, and a brute-force
//! automorphism oracle for small dimensions.
//!
//! An automorphism of Q_n permutes coordinates and complements a subset of
//! them, exactly the permaut action on a characteristic matrix; an ordered
//! vertex set is a distinguishing class precisely when that matrix is
//! asymmetric.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bitmatrix::{BinaryMatrix, Permaut};
use crate::construct::{asymmetric_witness_with, WitnessConfig};
use crate::cost::CostTable;
use crate::error::{Error, Result};
use crate::symmetry::{is_asymmetric_with, SearchConfig};

pub const AUT_DIMENSION_GUARD: usize = 8;

/// An ordered set of distinct vertices of Q_n, each an n-bit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelClass {
    matrix: BinaryMatrix,
}

impl LabelClass {
    /// Builds from bit strings; rejects duplicates and length mismatches.
    pub fn from_strings(n: usize, vertices: &[String]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyClass);
        }
        for v in vertices {
            if v.len() != n {
                return Err(Error::Parse(format!(
                    "vertex {v:?} has {} coordinates, expected {n}",
                    v.len()
                )));
            }
        }
        let matrix: BinaryMatrix = vertices.join("\n").parse()?;
        Self::from_matrix(matrix)
    }

    /// Rows of the matrix become the vertices, in order.
    pub fn from_matrix(matrix: BinaryMatrix) -> Result<Self> {
        if matrix.row_count() == 0 {
            return Err(Error::EmptyClass);
        }
        if let Some((a, b)) = matrix.duplicate_row_pair() {
            return Err(Error::DuplicateRowsInInput(a, b));
        }
        Ok(LabelClass { matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.col_count()
    }

    pub fn len(&self) -> usize {
        self.matrix.row_count()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty classes
    }

    pub fn vertex_strings(&self) -> Vec<String> {
        self.matrix.to_string().lines().map(str::to_owned).collect()
    }

    /// The m x n matrix whose row i is vertex i.
    pub fn characteristic_matrix(&self) -> BinaryMatrix {
        self.matrix.clone()
    }
}

/// A hypercube automorphism under the same (pi, flips) encoding as the
/// matrix permaut: coordinate j of the image reads coordinate pi^-1(j) of
/// the argument, complemented when that coordinate is flipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeAutomorphism {
    permaut: Permaut,
}

impl HypercubeAutomorphism {
    pub fn identity(n: usize) -> Self {
        HypercubeAutomorphism {
            permaut: Permaut::identity(n),
        }
    }

    pub fn new(pi: Vec<usize>, flips: &[usize]) -> Result<Self> {
        Ok(HypercubeAutomorphism {
            permaut: Permaut::new(pi, flips)?,
        })
    }

    pub fn from_permaut(permaut: Permaut) -> Self {
        HypercubeAutomorphism { permaut }
    }

    pub fn as_permaut(&self) -> &Permaut {
        &self.permaut
    }

    pub fn is_identity(&self) -> bool {
        self.permaut.is_identity()
    }

    pub fn apply_vertex(&self, v: &[bool]) -> Vec<bool> {
        let n = v.len();
        let mut out = vec![false; n];
        for (src, &bit) in v.iter().enumerate() {
            out[self.permaut.pi()[src]] = bit ^ self.permaut.flips_column(src);
        }
        out
    }

    /// Image of an ordered vertex set; order is preserved.
    pub fn apply_class(&self, s: &LabelClass) -> Result<LabelClass> {
        let image = s.matrix.apply_permaut(&self.permaut)?;
        Ok(LabelClass { matrix: image })
    }
}

/// True when only the trivial automorphism preserves the vertex set.
pub fn is_distinguishing_class(s: &LabelClass) -> Result<bool> {
    is_distinguishing_class_with(s, &SearchConfig::default())
}

pub fn is_distinguishing_class_with(s: &LabelClass, cfg: &SearchConfig) -> Result<bool> {
    is_asymmetric_with(&s.characteristic_matrix(), cfg)
}

/// All automorphisms of Q_n preserving the set `s` setwise, by enumerating
/// the full group of n! * 2^n elements. Guarded at n <= 8.
pub fn aut_preservers(s: &LabelClass) -> Result<Vec<HypercubeAutomorphism>> {
    let n = s.dimension();
    if n > AUT_DIMENSION_GUARD {
        return Err(Error::DimensionGuardExceeded(n, AUT_DIMENSION_GUARD));
    }
    let vertices: Vec<u32> = (0..s.len())
        .map(|i| (0..n).fold(0u32, |acc, j| acc | ((s.matrix.get(i, j) as u32) << j)))
        .collect();
    let mut sorted = vertices.clone();
    sorted.sort_unstable();

    let mut out = Vec::new();
    let mut pi: Vec<usize> = (0..n).collect();
    loop {
        for flip_bits in 0u32..(1 << n) {
            let mut image: Vec<u32> = vertices
                .iter()
                .map(|&v| {
                    let mut w = 0u32;
                    for (src, &dst) in pi.iter().enumerate() {
                        let bit = (v >> src) & 1 ^ (flip_bits >> src) & 1;
                        w |= bit << dst;
                    }
                    w
                })
                .collect();
            image.sort_unstable();
            if image == sorted {
                let flips: Vec<usize> = (0..n).filter(|&j| (flip_bits >> j) & 1 == 1).collect();
                out.push(HypercubeAutomorphism::new(pi.clone(), &flips)?);
            }
        }
        if !next_permutation(&mut pi) {
            break;
        }
    }
    Ok(out)
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

/// A distinguishing class of exactly rho(Q_n) vertices, from the witness
/// construction.
pub fn distinguishing_class(n: &BigUint) -> Result<LabelClass> {
    distinguishing_class_with(n, &WitnessConfig::default())
}

pub fn distinguishing_class_with(n: &BigUint, cfg: &WitnessConfig) -> Result<LabelClass> {
    let costs = CostTable::new();
    let m = costs.rho(n)? as usize;
    let n_usize = n
        .to_usize()
        .filter(|&v| (v as u128) * (m as u128) <= cfg.memory_guard_bits)
        .ok_or(Error::MemoryGuardExceeded {
            m,
            n: usize::MAX,
            bits: u128::MAX,
            guard: cfg.memory_guard_bits,
        })?;
    let (x, _) = asymmetric_witness_with(m, n_usize, cfg)?;
    LabelClass::from_matrix(x)
}

/// Certifies rho(Q_4) = 5 independently of matrix theory: no 4-subset of
/// V(Q_4) is a distinguishing class, the constructed 5-subset is, and the
/// matrix-path verdict agrees with the group-path verdict on every one of
/// the 1820 4-subsets.
pub fn verify_minimality_q4() -> Result<bool> {
    let n = 4usize;
    // all 384 automorphism lookup tables over the 16 vertices
    let mut luts: Vec<[u8; 16]> = Vec::with_capacity(384);
    let mut identity_index = 0;
    let mut pi: Vec<usize> = (0..n).collect();
    loop {
        for flip_bits in 0u32..(1 << n) {
            let mut lut = [0u8; 16];
            for (v, slot) in lut.iter_mut().enumerate() {
                let mut w = 0u8;
                for (src, &dst) in pi.iter().enumerate() {
                    let bit = ((v as u32) >> src) & 1 ^ (flip_bits >> src) & 1;
                    w |= (bit as u8) << dst;
                }
                *slot = w;
            }
            if lut.iter().enumerate().all(|(v, &w)| v as u8 == w) {
                identity_index = luts.len();
            }
            luts.push(lut);
        }
        if !next_permutation(&mut pi) {
            break;
        }
    }
    debug_assert_eq!(luts.len(), 384);

    let preserved = |mask: u16, lut: &[u8; 16]| -> bool {
        let mut image = 0u16;
        for (v, &w) in lut.iter().enumerate() {
            if mask >> v & 1 == 1 {
                image |= 1 << w;
            }
        }
        image == mask
    };

    // every 4-subset: group path and matrix path must both say "no"
    let cfg = SearchConfig::default();
    for a in 0..16u16 {
        for b in (a + 1)..16 {
            for c in (b + 1)..16 {
                for d in (c + 1)..16 {
                    let mask = (1 << a) | (1 << b) | (1 << c) | (1 << d);
                    let group_distinguishing = luts
                        .iter()
                        .enumerate()
                        .all(|(t, lut)| t == identity_index || !preserved(mask, lut));
                    let matrix = BinaryMatrix::from_fn(4, 4, |i, j| {
                        let v = [a, b, c, d][i];
                        v >> j & 1 == 1
                    });
                    let matrix_distinguishing = is_asymmetric_with(&matrix, &cfg)?;
                    if group_distinguishing != matrix_distinguishing {
                        return Ok(false);
                    }
                    if group_distinguishing {
                        // a 4-subset must never distinguish Q_4
                        return Ok(false);
                    }
                }
            }
        }
    }

    // the constructed 5-subset distinguishes, on both paths
    let class = distinguishing_class(&BigUint::from(4u8))?;
    if class.len() != 5 {
        return Ok(false);
    }
    if !is_distinguishing_class(&class)? {
        return Ok(false);
    }
    let only_identity = aut_preservers(&class)?
        .iter()
        .all(HypercubeAutomorphism::is_identity);
    Ok(only_identity)
}
