use thiserror::Error;

use crate::tensor::Shape;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape ({r1},{r2},{r3}): every level count must be at least 1")]
    InvalidShape { r1: usize, r2: usize, r3: usize },

    #[error("shape {0} requires r1 >= 2")]
    NeedTwoRows(Shape),

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: Shape, right: Shape },

    #[error("index p_{{{i}{j}{k}}} out of bounds for shape {shape}")]
    IndexOutOfBounds {
        shape: Shape,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("expected {expected} entries for shape {shape}, got {got}")]
    WrongLength {
        shape: Shape,
        expected: usize,
        got: usize,
    },

    #[error("edge ({j},{k}) out of bounds for [{left}]x[{right}]")]
    EdgeOutOfBounds {
        left: usize,
        right: usize,
        j: usize,
        k: usize,
    },

    #[error("graph is not admissible: {0}")]
    NotAdmissible(String),

    #[error("binomial is not homogeneous for the sufficient-statistics grading")]
    NotHomogeneous,

    #[error("binomial has identical terms")]
    TrivialBinomial,

    #[error("fiber cap of {cap} points exceeded ({partial} points enumerated)")]
    FiberCapExceeded { cap: usize, partial: usize },

    #[error("the two graphs are equal; no irredundance witness exists")]
    SameGraph,

    #[error("could not produce a witness: {0}")]
    NoWitness(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
