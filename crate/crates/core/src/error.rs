use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("type ({genus}, {marked}) violates 2G + N - 2 > 0")]
    UnstableType { genus: u32, marked: u32 },

    #[error("vertex count {k} outside 1..={max}")]
    VertexCount { k: usize, max: usize },

    #[error("malformed matrix: {0}")]
    Malformed(String),

    #[error("matrices have different vertex counts ({0} and {1})")]
    VertexMismatch(usize, usize),

    #[error("transposition index {j} outside 1..{k}")]
    TranspositionIndex { j: usize, k: usize },

    #[error("canonical labeling search exceeded {limit} leaves")]
    DedupGuard { limit: u64 },

    #[error("oracle is limited to types with at most {max} vertices, ({genus}, {marked}) needs {needed}")]
    OracleGuard {
        genus: u32,
        marked: u32,
        needed: usize,
        max: usize,
    },
}
