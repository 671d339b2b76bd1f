use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("z = {0} is negative but the generator ranges over the naturals")]
    NegativeArgument(i64),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("bound {0} exceeds the supported maximum 2^32")]
    BoundTooLarge(u64),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("anchor {target} is representable: {witness}")]
    AnchorRepresentable { target: u64, witness: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("mask cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
