use thiserror::Error;

/// Errors raised by graph construction, the exact solvers and the experiment
/// runners.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),

    #[error("pair ({0}, {1}) is already an edge")]
    ExistingEdge(usize, usize),

    #[error("vertex sets must be disjoint")]
    OverlappingSets,

    #[error("{what}: graph has {n} vertices, limit is {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("{what}: budget of {budget} exceeded")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by a solver or enumeration limit rather than
    /// by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
