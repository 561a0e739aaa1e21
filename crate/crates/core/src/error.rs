use thiserror::Error;

use crate::polyparse::ParseError;

/// Errors raised by the algebraic pipelines.
///
/// Variants split into two families: input errors (malformed polynomials,
/// frame mismatches, bad indices) and mathematical refusals (the input is
/// well-formed but the requested invariant is not defined for it, or the
/// genericity search gave up). [`Error::is_refusal`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid variable frame: {0}")]
    Frame(String),

    #[error("polynomials live in different variable frames")]
    FrameMismatch,

    #[error("variable index {index} out of range for a frame of {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("coordinate change matrix is singular")]
    SingularMatrix,

    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("origin is not an isolated point of {what}")]
    NotIsolatedAtOrigin { what: String },

    #[error("non-isolated critical locus; use mode=le")]
    NonIsolatedCriticalLocus,

    #[error(
        "constant polynomial has no affine critical-locus induction; use the Le-Vogel pipeline"
    )]
    ConstantFunction,

    #[error(
        "singularity is not isolated (s = {s}); the Euler obstruction of a function needs s <= 0"
    )]
    NotIsolatedSingularity { s: i64 },

    #[error("improper intersection at step k = {k}: {detail}")]
    Improper { k: usize, detail: String },

    #[error("no coordinate frame passed the properness checks within {attempts} attempts")]
    BudgetExhausted { attempts: usize, log: Vec<String> },

    #[error("not a complete intersection of codimension {codim}: {detail}")]
    NotCompleteIntersection { codim: usize, detail: String },

    #[error("conormal construction failed: {0}")]
    Conormal(String),

    #[error("no stabilization up to degree bound {bound}")]
    NoStabilization { bound: usize },

    #[error("{0}")]
    Oracle(String),

    #[error("invalid job: {0}")]
    InvalidJob(String),
}

impl Error {
    /// True for well-posed inputs on which the requested quantity is refused
    /// (non-isolated where isolated is required, exhausted genericity budget).
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotZeroDimensional
                | Error::NotIsolatedAtOrigin { .. }
                | Error::NonIsolatedCriticalLocus
                | Error::ConstantFunction
                | Error::NotIsolatedSingularity { .. }
                | Error::Improper { .. }
                | Error::BudgetExhausted { .. }
                | Error::NoStabilization { .. }
                | Error::Conormal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
