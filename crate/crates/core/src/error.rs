use std::fmt;

use thiserror::Error;

/// One of the three order axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cover relation has a directed cycle through element {0}")]
    Cycle(usize),

    #[error("index {index} out of range for a poset with {n} elements")]
    Index { index: usize, n: usize },

    #[error("{axiom} fails at {witness:?}")]
    Axiom { axiom: Axiom, witness: Vec<usize> },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("invalid size: {0}")]
    Size(String),

    #[error("size guard exceeded: {what} (limit {limit})")]
    Cap { what: String, limit: usize },

    #[error("C(E^X) and constant maps require a non-empty exponent poset")]
    EmptyExponent,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search bounds exhausted without a witness (this is not a counterexample)")]
    Exhausted,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("time budget of {0:?} exceeded")]
    Timeout(std::time::Duration),
}

pub type Result<T> = std::result::Result<T, Error>;
