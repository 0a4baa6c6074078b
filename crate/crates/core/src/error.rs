use alloc::string::String;

/// Errors raised while building or evaluating equipment data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{elem} is not a member of {set}")]
    Domain { elem: String, set: String },
    #[error("map `{map}` has no rule for {elem}")]
    Rule { map: String, elem: String },
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("cannot enumerate pullback: {0}")]
    InfeasibleEnumeration(String),
    #[error("chain mismatch at position {position}: {detail}")]
    ChainMismatch { position: usize, detail: String },
    #[error("partition {partition} does not fit a chain of length {len}")]
    PartitionMismatch { partition: String, len: usize },
    #[error("scalar does not fit the {0} leg")]
    SideMismatch(String),
    #[error("cell boundaries do not match: {0}")]
    BoundaryMismatch(String),
    #[error("not a cell: {0}")]
    NotACell(String),
    #[error("unbounded composite: {0}")]
    UnboundedComposite(String),
    #[error("the inverse of nu^m is unavailable for this host")]
    NotInvertibleNuM,
    #[error("no star structure: {0}")]
    NoStarStructure(String),
    #[error("enumeration of {count} candidates exceeds the cap {cap}")]
    BoundTooLargeToEnumerate { count: u128, cap: u128 },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("not a quantale: {0}")]
    Quantale(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
