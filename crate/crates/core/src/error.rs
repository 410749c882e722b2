use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("unsupported field order {0} (at most 16)")]
    UnsupportedOrder(u64),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("inconsistent intersection array: {0}")]
    InconsistentArray(String),

    #[error("non-integral count: {0}")]
    NonIntegral(String),

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("graph is disconnected (vertex {0} unreachable from 0)")]
    Disconnected(usize),

    #[error("not distance-regular: {0}")]
    NotDistanceRegular(String),

    #[error("non-constant count: {0}")]
    NonConstant(String),

    #[error("vertices {0} and {1} are not at distance 2")]
    NotAtDistance2(usize, usize),

    #[error("clique explosion: search exceeded {0} nodes")]
    CliqueExplosion(u64),

    #[error("empty kappa window: lower bound {lower} >= upper bound {upper}")]
    EmptyWindow { lower: String, upper: String },

    #[error("singular linear system")]
    SingularSystem,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
