use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible idempotents: {0}")]
    IncompatibleIdempotents(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator index {0} out of range")]
    GeneratorIndex(usize),

    #[error("idempotent `{0}` cannot appear as an operation input (strict unitality)")]
    IdempotentInput(String),

    #[error("structure fails its structure equation: {0}")]
    InvalidStructure(String),

    #[error("invalid order {0}: orders must be >= 1")]
    InvalidOrder(i64),

    #[error("empty order list")]
    EmptyOrders,

    #[error("boundary does not square to zero")]
    NotAComplex,

    #[error("no boundedness witness: {0}")]
    NoBoundednessWitness(String),

    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, name: String },

    #[error("line {line}: unknown token `{token}`")]
    UnknownToken { line: usize, token: String },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::UnknownToken { token, .. } => Error::UnknownToken { line, token },
            Error::DuplicateGenerator { name, .. } => Error::DuplicateGenerator { line, name },
            Error::Parse { msg, .. } => Error::Parse { line, msg },
            other => Error::Parse {
                line,
                msg: other.to_string(),
            },
        }
    }
}
