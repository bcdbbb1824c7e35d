use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("instance has no intervals")]
    EmptyInstance,

    #[error("{what}: expected length {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("interval {index} has left endpoint greater than right endpoint")]
    InvalidInterval { index: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("greedy path requires u before v in the canonical order (got u={u}, v={v})")]
    NotOriented { u: usize, v: usize },

    #[error("no path between vertices {u} and {v}")]
    Disconnected { u: usize, v: usize },

    #[error("window lower bound exceeds upper bound")]
    InvalidWindow,

    #[error("at least {needed} terminals required, found {found}")]
    TooFewTerminals { needed: usize, found: usize },

    #[error("vertex {vertex} violates the unit/point shape: {reason}")]
    NotUnitPoint { vertex: usize, reason: &'static str },

    #[error("bit string width {got} does not match expected width {expected}")]
    WidthMismatch { expected: u32, got: u32 },

    #[error("lowest common ancestor needs two distinct strings")]
    EqualStrings,

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge ({0}, {1}) is not an edge of the host graph")]
    NotHostEdge(usize, usize),

    #[error("terminal {0} is missing from the subgraph")]
    MissingTerminal(usize),

    #[error("horizontal edge {0:?} -> {1:?} is missing")]
    MissingHorizontalEdge((usize, i64), (usize, i64)),

    #[error("graph {0} of the family is not bipartite")]
    NotBipartite(usize),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("no cut point satisfies the window constraints")]
    NoValidCut,

    #[error("unit re-representation failed: {0}")]
    Representation(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
