use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("generator index {index} out of range (presentation has {count} generators)")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("machine stuck in state `{state}` reading `{symbol}` after {steps} steps")]
    Stuck { state: String, symbol: String, steps: usize },

    #[error("relation {index} is not in special form: {msg}")]
    NotSpecial { index: usize, msg: String },

    #[error("invalid derivation: {0}")]
    InvalidDerivation(String),

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("not a Gordon-shaped presentation: {0}")]
    NotGordon(String),
}

pub type Result<T> = std::result::Result<T, Error>;
