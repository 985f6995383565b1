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

    #[error("generator g{label} is not defined in presentation `{presentation}`")]
    UnknownGenerator { presentation: String, label: u32 },

    #[error("index out of range: {0}")]
    IndexRange(String),

    /// A right-hand side refers to a generator at or above the one it defines.
    #[error("right-hand side of `{relation}` uses g{offending}, which must be below g{bound}")]
    RhsIndex {
        relation: String,
        offending: u32,
        bound: u32,
    },

    #[error("collection ran out of fuel after {steps} steps; partially collected word: {partial}")]
    FuelExhausted { steps: u64, partial: String },

    #[error("exponent overflow while collecting")]
    ExponentOverflow,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("left-normed commutator needs at least two entries, got {0}")]
    Arity(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("lower central series exceeded the class bound {bound}")]
    MaxClassExceeded { bound: usize },

    #[error("group is not nilpotent: lower central series stabilizes at a nontrivial term of order {order}")]
    NotNilpotent { order: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for the errors that signal an exhausted budget rather than bad input.
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::FuelExhausted { .. }
                | Error::ExponentOverflow
                | Error::CapExceeded(_)
                | Error::MaxClassExceeded { .. }
        )
    }
}
