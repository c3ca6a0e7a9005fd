//! Exact computation of the cost of 2-distinguishing hypercubes.
//!
//! The library decides matrix symmetry exactly, constructs explicit
//! asymmetric binary matrices (equivalently, distinguishing classes of
//! Q_n) for every feasible shape, and evaluates rho(Q_n) and the companion
//! quantity nu_m through their mutual recursion with arbitrary-precision
//! n. Brute-force oracles back every fast path.

pub mod bitmatrix;
pub mod complement;
pub mod construct;
pub mod cost;
pub mod error;
pub mod format;
pub mod hypercube;
pub mod symmetry;

pub use bitmatrix::{
    concat_columns_checked, concat_rows_checked, BinaryMatrix, Permaut, RowPermutation, Symmetry,
};
pub use complement::{canonical_representative, column_complement, row_complement};
pub use construct::{
    asymmetric_witness, half_height, half_width, pad_with_unused_weight_columns, small_table,
    staircase, CaseTag, ConstructionPlan, WitnessConfig,
};
pub use cost::{ceil_log2, det_qn, CostTable};
pub use error::{Error, Result};
pub use hypercube::{
    aut_preservers, distinguishing_class, is_distinguishing_class, verify_minimality_q4,
    HypercubeAutomorphism, LabelClass,
};
pub use symmetry::{
    exhaustive_nonexistence, find_symmetry, is_asymmetric, naive_symmetry_oracle, SearchConfig,
};
