use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("id {id} out of range for {n} points")]
    OutOfRange { id: usize, n: usize },

    #[error("loop at vertex {0} but the graph kind forbids loops")]
    LoopForbidden(usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("family is not invariant: the image {image:?} of member {member:?} is missing")]
    NotInvariant { member: Vec<usize>, image: Vec<usize> },

    #[error("member {0:?} does not meet the proposed transversal")]
    NotTransversal(Vec<usize>),

    #[error("empty set where a nonempty one is required")]
    EmptySet,

    #[error("family contains an empty member")]
    EmptyMember,

    #[error("orbit partition covers {partition} points but the family uses point {point}")]
    PartitionMismatch { partition: usize, point: usize },

    #[error("graph kinds differ (host directed: {host}, pattern directed: {pattern})")]
    KindMismatch { host: bool, pattern: bool },

    #[error("pattern {0} is empty in the chosen mode")]
    EmptyPattern(usize),

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("graph has {n} vertices, above the search cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("bad parameter: {0}")]
    BadParam(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid document: {0}")]
    Format(String),
}
