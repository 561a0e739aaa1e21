//! Independent verifiers for the values the engine produces.
//!
//! Nothing here calls into [`crate::groebner`]: Milnor numbers come from
//! dense row reduction of truncated Jacobian multiples, Euler
//! characteristics of Milnor fibres from the join formula and from covering
//! counts for binary forms, colengths of monomial ideals from walking the
//! staircase.

mod euler;
mod macaulay;
mod staircase;

use serde::Serialize;

pub use euler::{chi_homogeneous_plane, chi_thom_sebastiani};
pub use macaulay::{milnor_via_macaulay, DEFAULT_DEGREE_BOUND};
pub use staircase::monomial_colength;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    Macaulay,
    ThomSebastiani,
    HomogeneousFibre,
    MonomialCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub value: i64,
    pub method: OracleMethod,
    /// what was computed, in words
    pub certificate: String,
}
