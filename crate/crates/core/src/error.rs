use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state {0} lies outside the cost-map domain")]
    OutOfDomain(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// The Informed Set has empty interior: `c_i` does not exceed the
    /// straight-line distance between start and goal.
    #[error("degenerate informed set: cost {cost} <= lower bound {lower_bound}")]
    DegenerateSet { cost: f64, lower_bound: f64 },

    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),

    #[error("state duplicates vertex {0}")]
    Duplicate(usize),

    #[error("graph is empty")]
    EmptyGraph,

    #[error("malformed PGM: {0}")]
    Pgm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
