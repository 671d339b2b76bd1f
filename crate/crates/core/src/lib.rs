pub mod cache;
pub mod classifier;
pub mod data;
pub mod error;
pub mod generators;
pub mod grammar;
pub mod sieve;
pub mod theorems;
pub mod verdict;

pub use error::{Error, Result};
pub use generators::{Domain, Generator, GeneratorKind, TernaryForm};
