use thiserror::Error;

/// Errors produced by matrix operations, searches, and constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: permutation acts on {perm} indices, matrix has {have}")]
    DimensionMismatch { perm: usize, have: usize },

    #[error("row count mismatch: {0} vs {1}")]
    RowCountMismatch(usize, usize),

    #[error("column count mismatch: {0} vs {1}")]
    ColCountMismatch(usize, usize),

    #[error("column weight collision: weight {0} appears in both operands")]
    WeightCollision(usize),

    #[error("right operand contains isomorphic columns ({0} and {1})")]
    IsomorphicColumnsInY(usize, usize),

    #[error("row weight collision: weight {0} appears in both operands")]
    RowWeightCollision(usize),

    #[error("lower operand contains duplicate rows ({0} and {1})")]
    DuplicateRowsInZ(usize, usize),

    #[error("stacked matrix has column {0} of weight exactly {1}/2")]
    HalfWeightColumn(usize, usize),

    #[error("input has isomorphic columns ({0} and {1})")]
    IsomorphicColumnsInInput(usize, usize),

    #[error("input has duplicate rows ({0} and {1})")]
    DuplicateRowsInInput(usize, usize),

    #[error("complement width guard exceeded: {dim} > {guard}")]
    WidthGuardExceeded { dim: usize, guard: usize },

    #[error("search budget exceeded after {0} nodes")]
    SearchBudgetExceeded(u64),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("no table entry for {0}x{1}")]
    NotInTable(usize, usize),

    #[error("no asymmetric {m}x{n} matrix exists: {bound}")]
    Infeasible { m: usize, n: usize, bound: String },

    #[error("memory guard exceeded: {m}x{n} needs {bits} bits > {guard}")]
    MemoryGuardExceeded {
        m: usize,
        n: usize,
        bits: u128,
        guard: u128,
    },

    #[error("cannot provide {requested} padding columns, only {available} available")]
    InsufficientColumns { requested: usize, available: usize },

    #[error("cannot provide {requested} padding rows under the stacking rules")]
    InsufficientRows { requested: usize },

    #[error("hypercubes of dimension {0} are not 2-distinguishable (need n >= 4)")]
    NotTwoDistinguishable(String),

    #[error("label class is empty")]
    EmptyClass,

    #[error("dimension guard exceeded: n = {0} > {1}")]
    DimensionGuardExceeded(usize, usize),

    #[error("constructed matrix failed its own symmetry check ({m}x{n})")]
    ConstructionVerificationFailed { m: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache rejected: {0}")]
    CacheInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
