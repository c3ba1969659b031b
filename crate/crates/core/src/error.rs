use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {gen} out of range 1..={rank}")]
    GeneratorOutOfRange { gen: u16, rank: u16 },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("truncation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("strand index {index} out of range 1..={strands}")]
    StrandOutOfRange { index: usize, strands: usize },

    #[error("component index {index} out of range 1..={components}")]
    ComponentOutOfRange { index: usize, components: usize },

    #[error("braid is not pure (strand permutation {0:?})")]
    NonPureBraid(Vec<usize>),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("arc multiplicity: label {label} appears {count} times")]
    ArcMultiplicity { label: u32, count: usize },

    #[error("orientation inconsistency at crossing {crossing}: {message}")]
    Orientation { crossing: usize, message: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("move not applicable: {0}")]
    InapplicableMove(String),

    #[error("index sequence {index:?} has length {len}, but peripheral data only supports length <= {max}")]
    InsufficientDegree { index: Vec<u16>, len: usize, max: usize },

    #[error("invalid index sequence {0:?}")]
    InvalidIndex(Vec<u16>),

    #[error("missing shorter-length entry {0:?} in table")]
    MissingEntry(Vec<u16>),

    #[error("search budget exceeded: {required} coefficient extractions needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("size cap exceeded: {what} would reach {size}, cap is {cap}")]
    SizeExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("insufficient table depth: need length {needed}, table has {available}")]
    InsufficientDepth { needed: usize, available: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("link file: {0}")]
    Json(#[from] serde_json::Error),
}
