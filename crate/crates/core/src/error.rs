use thiserror::Error;

/// Rejections raised by graph construction and editing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("pair ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) is already present")]
    EdgePresent { u: usize, v: usize },
    #[error("edge ({u}, {v}) is not present")]
    EdgeMissing { u: usize, v: usize },
    #[error("cannot merge an empty vertex set")]
    EmptyVertexSet,
    #[error("merge set is not independent: edge ({u}, {v})")]
    NotIndependent { u: usize, v: usize },
    #[error("corrupt graph: {0}")]
    Corrupt(&'static str),
}

/// Why an exact solver declined to answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for exact solving: {what} = {value} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("input graph is not split")]
    NotSplit,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
