use thiserror::Error;

/// Errors produced while parsing documents, validating inputs, or running
/// solvers whose search space is bounded by a guard.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("student `{0}` has an empty preference list")]
    EmptyPreferences(String),

    #[error("school `{0}` has an empty priority list")]
    EmptyPriorities(String),

    #[error("school `{0}` has capacity 0; every capacity must be at least 1")]
    ZeroCapacity(String),

    #[error("student `{student}` and school `{school}` are not mutually acceptable")]
    MutualAcceptability { student: String, school: String },

    #[error("missing {kind} list for `{id}`")]
    MissingList { kind: &'static str, id: String },

    #[error("`{member}` appears twice in the list of `{owner}`")]
    DuplicateInList { owner: String, member: String },

    #[error("student `{student}` is assigned to `{school}`, which is not acceptable")]
    UnacceptableAssignment { student: String, school: String },

    #[error("matching is infeasible: school `{0}` is over capacity")]
    OverCapacity(String),

    #[error("capacity vector has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("assignment vector domain does not match the unassigned students")]
    VectorDomainMismatch,

    #[error("search space of {required} candidates exceeds the guard of {guard}")]
    GuardExceeded { required: u128, guard: u64 },

    #[error("matching passed to trim is not stable under the given capacities")]
    UnstableInput,

    #[error("LP solver failed: {0}")]
    Lp(String),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("invalid source problem: {0}")]
    BadSource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
