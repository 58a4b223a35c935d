use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different quadratic fields Q(sqrt {0}) and Q(sqrt {1})")]
    MixedFields(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal {0:?} (expected \"p/q\" or an integer)")]
    ParseRational(String),

    #[error("square-free radicand {0} does not fit in 64 bits")]
    RadicandTooLarge(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("intersection form is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("lattice rank {0} is outside the supported range 1..=8")]
    RankOutOfRange(usize),

    #[error(
        "Hodge index violated: intersection form has inertia (+{positive}, -{negative}, 0:{zero}), expected (+1, -{expected_negative})"
    )]
    WrongSignature {
        positive: usize,
        negative: usize,
        zero: usize,
        expected_negative: usize,
    },

    #[error("invalid cone model: {0}")]
    InvalidCone(String),

    #[error("{0} is not strictly interior to the cone")]
    NotInterior(String),

    #[error("branch divisor is not twice an integral class")]
    BranchNotDivisibleBy2,

    #[error("half of the branch divisor is not strictly interior to the cone")]
    BranchNotAmple,

    #[error("surface already carries a cover of degree {0}")]
    AlreadyCovered(u32),

    #[error("cover degree {0} is not supported (expected 1 or 2)")]
    UnsupportedCoverDegree(u32),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("feasible set is not bounded below")]
    NotBoundedBelow,

    #[error("no boundary exists: {0}")]
    NoBoundaryExists(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{path}: {message}")]
    Config { path: String, message: String },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible(_) | Error::NoBoundaryExists(_) => 3,
            Error::NotBoundedBelow | Error::InvariantViolation(_) => 4,
            _ => 2,
        }
    }

    pub(crate) fn at(self, path: impl Into<String>) -> Error {
        match self {
            Error::Config { .. } => self,
            other => Error::Config {
                path: path.into(),
                message: other.to_string(),
            },
        }
    }
}
