use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex set is not sorted and duplicate-free")]
    NonCanonicalSet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("graph on {n} vertices exceeds the {limit}-vertex limit of {op}")]
    TooLarge {
        op: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("set is not stable")]
    NotStable,
    #[error("list assignment does not cover vertex {0}")]
    MissingList(usize),
    #[error("list assignment violates maximum separation on edge {0}-{1}")]
    SeparationViolated(usize, usize),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("witness failed verification: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
