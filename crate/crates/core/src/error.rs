use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input (line {line}): {reason}")]
    MalformedInput { line: usize, reason: String },

    #[error("index ({row}, {col}) out of range for a matrix of order {order}")]
    IndexOutOfRange { row: usize, col: usize, order: usize },

    #[error("matrix of order {0} is too small for this operation")]
    OrderTooSmall(usize),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("({x},{y}) is not a relation of the matrix")]
    NotARelation { x: String, y: String },

    #[error("subdivision bound exceeded: {used} steps against a limit of {limit}")]
    BoundExceeded { limit: usize, used: usize },

    #[error("matrix is not quasicanonical")]
    NotQuasicanonical,

    #[error("inconsistent block decomposition: {0}")]
    InconsistentBlocks(String),

    #[error("edge labels of the model do not match the matrix labels")]
    LabelMismatch,

    #[error("trace does not match the model: {0}")]
    TraceMismatch(String),

    #[error("`{label}` is not contractible (sigma = {sigma})")]
    NotContractible { label: String, sigma: usize },

    #[error("contracting `{alpha}` would merge it into the existing relation ({x},{y})")]
    WouldMergeParallel { alpha: String, x: String, y: String },

    #[error("contracting `{alpha}` would create a loop on `{x}`")]
    WouldCreateLoop { alpha: String, x: String },

    #[error("invalid Euler partial graph: {0}")]
    InvalidPartial(String),

    #[error("order {n} exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("invalid digraph: {0}")]
    InvalidGraph(String),
}
