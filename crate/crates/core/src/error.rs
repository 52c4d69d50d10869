use thiserror::Error;

/// Errors raised by graph construction, operator assembly and the structure checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge label `{0}`")]
    DuplicateEdge(String),
    #[error("invalid label `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown path `{0}`")]
    UnknownPath(String),
    #[error("label `{0}` names both a vertex and an edge")]
    AmbiguousLabel(String),
    #[error("cannot concatenate: source of left path `{left}` differs from range of right path `{right}`")]
    InadmissibleConcatenation { left: String, right: String },
    #[error("edge sequence is not an admissible path: {0}")]
    InadmissiblePath(String),
    #[error("basis of {requested} paths exceeds the size cap of {cap}")]
    SizeCap { requested: u128, cap: usize },
    #[error("truncation level {level} too small; at least {required} is required")]
    LevelTooSmall { level: usize, required: usize },
    #[error("level {level} outside 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator is not in the algebra (commutant residual {residual:e})")]
    NotInAlgebra { residual: f64 },
    #[error("operator is not a partial isometry (residual {residual:e})")]
    NotPartialIsometry { residual: f64 },
    #[error("vector support violates the anchor vertex: {0}")]
    SupportViolation(String),
    #[error("subspace is not invariant (residual {residual:e})")]
    NotInvariant { residual: f64 },
    #[error("eigenvalue point rejected: {0}")]
    EigenPointRejected(String),
    #[error("gauge block `{key}` is not unitary (residual {residual:e})")]
    NonUnitaryBlock { key: String, residual: f64 },
    #[error("gauge data has no block for `{0}`")]
    CoverageGap(String),
    #[error("gauge block `{key}` has size {found}, expected {expected}")]
    BlockSize { key: String, expected: usize, found: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("fixture `{fixture}` mismatch at ({row}, {col}): expected {expected}, found {found}")]
    FixtureMismatch {
        fixture: String,
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("construction leaked outside its expected support: {0}")]
    SupportLeak(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown label `{label}` at byte {offset}")]
    UnknownLabel { label: String, offset: usize },
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
