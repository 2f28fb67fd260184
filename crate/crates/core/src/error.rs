use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("entry {value} at ({row}, {col}) is out of range for order {n}")]
    EntryOutOfRange { row: usize, col: usize, value: i64, n: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("identity is element {found}, not 0 (relabel so the identity comes first)")]
    NoIdentityAtZero { found: usize },
    #[error("not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("relabelling must fix the identity (0 is sent to {0})")]
    IdentityMoved(usize),
    #[error("element {0} is out of range for a group of order {1}")]
    ElementOutOfRange(usize, usize),
    #[error("group is not Abelian")]
    NotAbelian,
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("operation requires a non-Abelian group")]
    AbelianInput,
    #[error("group is not semisimple")]
    NotSemisimple,
    #[error("WL dimension must be at least 1")]
    DimensionZero,
    #[error("WL dimension {0} is not supported (maximum 4)")]
    DimensionTooLarge(usize),
    #[error("colour token {0} is already in use")]
    TokenCollision(u64),
    #[error("{records} tuple records exceed the memory budget of {budget}")]
    MemoryBudget { records: u128, budget: u64 },
    #[error("order {order} exceeds the oracle cap {cap}")]
    OracleCapExceeded { order: usize, cap: usize },
    #[error("canonization did not separate all elements after {iterations} iterations")]
    NonCanonicalWarning { iterations: usize },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
