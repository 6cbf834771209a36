use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two interfaces that must agree (a composite's middle object, a rule's
    /// input pattern, ...) differ syntactically.
    #[error("type mismatch at {at}: expected `{expected}`, found `{found}`")]
    TypeMismatch {
        at: String,
        expected: String,
        found: String,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arity mismatch: expected {expected} fill objects, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("flattening mismatch: `{dom}` and `{cod}` have different base-wire sequences")]
    FlatteningMismatch { dom: String, cod: String },
    #[error("term is not invertible: {0}")]
    NotInvertible(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("rewrite budget of {0} steps exhausted")]
    StepBudgetExceeded(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn mismatch(
        at: impl Into<String>,
        expected: impl ToString,
        found: impl ToString,
    ) -> Self {
        Error::TypeMismatch {
            at: at.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
