use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("order contains a cycle through `{0}` and `{1}`")]
    Cycle(String, String),

    #[error("invalid order matrix: {0}")]
    InvalidOrder(String),

    #[error("relation is not reflexive and symmetric: {0}")]
    InvalidRelation(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{what} has {size} elements, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("{0} is not below {1}")]
    NotBelow(String, String),

    #[error("relation is not a tolerance")]
    NotATolerance,

    #[error("relation is not a congruence")]
    NotACongruence,

    #[error("poset is not a lattice")]
    NotALattice,

    #[error("first tolerance does not refine the second")]
    NotARefinement,

    #[error("quotient relation is not a tolerance on the quotient poset")]
    QuotientRelationNotTolerance,

    #[error("set {0} is not an interval")]
    NotAnInterval(String),

    #[error("{0} is not a member of the family")]
    NotInFamily(usize),

    /// A structural claim that should hold for every tolerance failed on a
    /// concrete instance.
    #[error("claim `{claim}` violated: {detail}")]
    ClaimViolated { claim: &'static str, detail: String },
}

impl Error {
    pub(crate) fn violated(claim: &'static str, detail: impl Into<String>) -> Self {
        Error::ClaimViolated {
            claim,
            detail: detail.into(),
        }
    }
}
