use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by graph construction, enumeration and the exact kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("{what} needs at least {min}, got {got}")]
    SizeTooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("{what} supports at most {max}, got {got}")]
    NTooLarge {
        what: &'static str,
        max: usize,
        got: usize,
    },
    #[error("row/column index out of range")]
    IndexOutOfRange,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("graph is not a tree")]
    NotATree,
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    /// Two computation routes that must agree exactly did not. This is an
    /// implementation bug, never an expected runtime condition.
    #[error("internal consistency failure: {0}")]
    FormulaMismatch(String),
    #[error("{truncated} walk(s) hit the step cap")]
    Truncation { truncated: u64 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
