use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Coxeter graph: {0}")]
    MalformedGraph(String),

    #[error("rank out of range: {0}")]
    RankOutOfRange(String),

    #[error("operation needs a catalog graph of type A, D or I2")]
    NotCatalog,

    #[error("generator {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("elements belong to different Coxeter groups")]
    GroupMismatch,

    #[error("words belong to different graphs")]
    GraphMismatch,

    #[error("generators {0} and {1} have no common multiple (label is infinite)")]
    InfiniteLabel(usize, usize),

    #[error("rewriting closure exceeded its budget of {0} nodes")]
    BudgetExceeded(usize),

    #[error("word reversing did not terminate within {0} steps")]
    ReversingDiverged(usize),

    #[error("alternating product needs at least one term")]
    EmptyAlternatingProduct,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("unsupported folding source: {0}")]
    UnsupportedFolding(String),

    #[error("curve graph: {0}")]
    CurveGraph(String),

    #[error("integer overflow in matrix product")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
