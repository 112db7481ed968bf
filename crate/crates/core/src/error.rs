use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    /// The operation needs a partition with exactly `n` parts and first
    /// part `n` (an `n x n` board shape).
    #[error("partition is not a board shape: need exactly n parts with first part n")]
    NotABoard,

    /// The operation needs a shape that admits at least one placement.
    #[error("shape admits no rook placements")]
    InfeasibleShape,

    #[error("enumeration cap exceeded: {what} = {requested} (cap {cap})")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    /// `young_diagram(f, N)` requires `N * rho` to be an integer for every
    /// breakpoint `rho`.
    #[error("grid size {n} is incompatible with breakpoint {breakpoint}")]
    GridMismatch { n: u64, breakpoint: String },

    /// Requested `log #placements` of a shape whose count is zero.
    #[error("log of zero count: row factor {0} is nonpositive")]
    LogOfZeroCount(i64),

    #[error("invalid drop tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid lattice path: {0}")]
    InvalidPath(String),
}

pub type Result<T> = std::result::Result<T, Error>;
