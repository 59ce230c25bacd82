use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in 2..=251")]
    InvalidModulus(u32),
    #[error("entry {value} out of range for GF({q})")]
    EntryOutOfRange { value: u32, q: u8 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u8, u8),
    #[error("vertex {vertex} outside [1, {ell}]")]
    VertexOutOfRange { vertex: usize, ell: usize },
    #[error("vertex {0} is not covered by any facet")]
    UncoveredVertex(usize),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("arrangement has no points")]
    EmptyPointSet,
    #[error("generator matrix has rank zero")]
    ZeroCode,
    #[error("search space too large: {0}")]
    CapExceeded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
