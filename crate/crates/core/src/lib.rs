//! Exact computation of Lê numbers, Lê-Vogel numbers, Milnor numbers and the
//! Euler-obstruction defect of a polynomial function germ at the origin.
//!
//! The layers, bottom up:
//!
//! * [`polyparse`]: sparse rational polynomials, parsing, linear changes.
//! * [`groebner`]: Buchberger bases, elimination, quotients, saturation,
//!   dimensions and colengths, including local invariants at the origin.
//! * [`lecycles`]: the affine polar/Lê cycle induction.
//! * [`conormal`]: conormal varieties of complete intersections and the
//!   Lê-Vogel induction in the cotangent space.
//! * [`defect`]: the defect, vanishing-cycle Euler characteristics, Milnor
//!   numbers and constructible-function bookkeeping.
//! * [`oracle`]: independent verifiers used by the test suites.
//! * [`cli`]: job specification, dispatch and deterministic reports.

pub mod cli;
pub mod conormal;
pub mod defect;
pub mod error;
pub mod groebner;
pub mod lecycles;
pub mod oracle;
pub mod polyparse;
pub mod rng;

pub use error::{Error, Result};
