use thiserror::Error;

/// Errors raised by constructions, searches and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph has a loop at vertex {0}")]
    HasLoop(usize),

    #[error("map is not a graph homomorphism: edge ({0}, {1}) is not preserved")]
    NotHomomorphism(usize, usize),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("not an involution")]
    NotInvolution,

    #[error("not an automorphism: edge ({0}, {1}) is not preserved")]
    NotAutomorphism(usize, usize),

    #[error("involution is not odd: vertex {0} keeps its parity")]
    NotOdd(usize),

    #[error("parity map is not a proper 2-coloring at edge ({0}, {1})")]
    BadParity(usize, usize),

    #[error("maps do not intertwine the involutions at vertex {0}")]
    NotIntertwining(usize),

    #[error("involution is not of product form: {0}")]
    NotProductForm(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
