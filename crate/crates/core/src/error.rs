use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),

    #[error("ideal not admissible within degree cap {cap}")]
    NotAdmissible { cap: usize },

    #[error("vertex {vertex} out of range (algebra has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("search space exceeds cap: {what} needs {needed} elements, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u128,
    },

    #[error("closure did not stabilize within bounds: {0}")]
    ClosureIncomplete(String),

    #[error("universe of indecomposables is not certified complete")]
    IncompleteUniverse,

    #[error("module is not tau-rigid: {0}")]
    NotTauRigid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown module name `{0}`")]
    UnknownModule(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the failure means "could not decide within caps" rather than
    /// a definite negative answer or bad input.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::ClosureIncomplete(_) | Error::IncompleteUniverse
        )
    }

    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
