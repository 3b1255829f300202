use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("random draw retry budget exhausted: {0}")]
    RetryBudgetExhausted(String),

    #[error("budget exceeded in {stage}: {detail}")]
    BudgetExceeded { stage: String, detail: String },

    #[error("the origin is not a point of the zero set")]
    OriginAbsent,

    #[error("not finite at origin: local dimension is {0}")]
    NotFiniteAtOrigin(usize),

    #[error(
        "co-support is not nowhere dense: V(I) ∩ X has local dimension {cosupport_dim} \
         but X has dimension {dim}; pass to the hat ideal (I, y) instead"
    )]
    CoSupportDense { cosupport_dim: usize, dim: usize },

    #[error("genericity trials disagree: {0}")]
    TrialDisagreement(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ideal containment fails: generator `{0}` is not in the larger ideal")]
    NotContained(String),

    #[error("tangent cone is not reduced: initial form `{0}` has a repeated factor")]
    NonReducedTangentCone(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("polynomial is a unit at the origin")]
    UnitAtOrigin,

    #[error("critical locus has codimension one at the origin (is f reduced?)")]
    CriticalLocusDense,

    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),

    #[error("hyperplane must be spanned by {expected} independent vectors, got rank {rank}")]
    NotAHyperplane { expected: usize, rank: usize },
}

impl Error {
    pub(crate) fn budget(stage: &str, detail: impl Into<String>) -> Self {
        Error::BudgetExceeded {
            stage: stage.to_string(),
            detail: detail.into(),
        }
    }
}
