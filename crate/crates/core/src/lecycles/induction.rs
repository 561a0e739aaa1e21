//! Downward polar/Lê induction shared by the affine and cotangent pipelines.
//!
//! Starting from a top cycle, each step cuts the current polar ideal by one
//! more hypersurface, splits the result into the part with no component in
//! the splitting locus (the next polar ideal) and the part supported in it
//! (the Lê part), and measures the Lê part against the coordinate slice
//! `V(z_1, ..., z_k)` at the origin.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::groebner::{dominant_part, saturate, top_dimensional_part, Ideal, MonomialOrder};
use crate::polyparse::{Polynomial, VariableFrame};

/// One level `k` of the induction.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub k: usize,
    /// The intersection cycle at this level (the top cycle when `k = N`).
    pub total: Ideal,
    /// Part with no component inside the splitting locus.
    pub gamma: Ideal,
    /// Part supported in the splitting locus.
    pub lambda_ideal: Ideal,
    /// Intersection number of the Lê part with `V(z_1, ..., z_k)` at 0.
    pub lambda: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// local dimension of the level-`k` intersection is at most `k`
    CycleDimension,
    /// the Lê part meets `V(z_1, ..., z_k)` in at most a point at 0
    LeSlice,
    /// total slice multiplicity equals Lê part plus polar part
    PolarDifference,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::CycleDimension => "cycle_dimension",
            CheckKind::LeSlice => "le_slice",
            CheckKind::PolarDifference => "polar_difference",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub k: usize,
    pub kind: CheckKind,
    /// measured quantity (a local dimension, or the multiplicity difference)
    pub value: i64,
    /// admissible bound (`value <= bound`, or equality for the difference)
    pub bound: i64,
    pub passed: bool,
    pub note: String,
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} {}: value {} bound {} {}{}",
            self.k,
            self.kind,
            self.value,
            self.bound,
            if self.passed { "pass" } else { "FAIL" },
            if self.note.is_empty() {
                String::new()
            } else {
                format!(" ({})", self.note)
            }
        )
    }
}

/// The full chain of polar and Lê ideals, from `k = N` down.
#[derive(Clone, Debug)]
pub struct GammaChain {
    pub n: usize,
    pub steps: Vec<ChainStep>,
    pub log: Vec<CheckRecord>,
    /// level at which a check failed, if any; the chain stops there
    pub failed_at: Option<usize>,
}

impl GammaChain {
    pub fn passed(&self) -> bool {
        self.failed_at.is_none() && self.steps.len() == self.n + 1
    }

    pub fn lambda(&self, k: usize) -> Option<u64> {
        self.steps.iter().find(|s| s.k == k).map(|s| s.lambda)
    }

    pub fn step(&self, k: usize) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.k == k)
    }

    /// Every ideal produced along the chain.
    pub fn ideals(&self) -> impl Iterator<Item = &Ideal> {
        self.steps
            .iter()
            .flat_map(|s| [&s.total, &s.gamma, &s.lambda_ideal])
    }

    pub fn failure(&self) -> Option<&CheckRecord> {
        self.log.iter().find(|c| !c.passed)
    }
}

pub(crate) struct Induction<'a> {
    pub frame: &'a Arc<VariableFrame>,
    /// number of slicing coordinates; they are the first `n` frame variables
    pub n: usize,
    pub top: Ideal,
    pub split: Ideal,
    /// `cuts[k]` is the hypersurface cutting level `k + 1` down to level `k`
    pub cuts: Vec<Polynomial>,
    /// run the polar-difference cross-check where both slices are proper
    pub cross_check: bool,
    /// replace intermediate polar ideals by their top-dimensional part
    pub purify_polar: bool,
}

pub(crate) fn slice(ideal: &Ideal, k: usize) -> Ideal {
    let frame = ideal.frame().clone();
    ideal
        .with_generators((0..k).map(|i| Polynomial::var(&frame, i)))
        .expect("same frame")
}

pub(crate) fn check_cycle_dimension(total: &Ideal, k: usize) -> CheckRecord {
    let dim = total.local_dimension();
    CheckRecord {
        k,
        kind: CheckKind::CycleDimension,
        value: dim,
        bound: k as i64,
        passed: dim <= k as i64,
        note: String::new(),
    }
}

pub(crate) fn check_le_slice(lambda_ideal: &Ideal, k: usize) -> CheckRecord {
    let dim = slice(lambda_ideal, k).local_dimension();
    CheckRecord {
        k,
        kind: CheckKind::LeSlice,
        value: dim,
        bound: 0,
        passed: dim <= 0,
        note: String::new(),
    }
}

fn canonical(i: Ideal) -> Ideal {
    i.canonical(MonomialOrder::DegRevLex)
}

/// The part of a `k`-dimensional ideal finite over `(z_1, ..., z_k)` near the
/// origin: drops embedded and lower-dimensional components, which would
/// otherwise inflate slice lengths.
fn slice_part(ideal: &Ideal, k: usize) -> Result<Ideal> {
    if k == 0 || ideal.is_unit() {
        return Ok(ideal.clone());
    }
    dominant_part(ideal, &(0..k).collect::<Vec<_>>())
}

impl Induction<'_> {
    pub fn run(self) -> Result<GammaChain> {
        let mut chain = GammaChain {
            n: self.n,
            steps: Vec::new(),
            log: Vec::new(),
            failed_at: None,
        };
        for k in (0..=self.n).rev() {
            let total = match chain.steps.last() {
                None => self.top.clone(),
                Some(prev) => {
                    if !prev.gamma.vanishes_at_origin() {
                        // nothing below this level reaches the origin
                        let unit = Ideal::unit(self.frame);
                        chain.log.push(CheckRecord {
                            k,
                            kind: CheckKind::CycleDimension,
                            value: -1,
                            bound: k as i64,
                            passed: true,
                            note: "polar part misses the origin".into(),
                        });
                        chain.steps.push(ChainStep {
                            k,
                            total: unit.clone(),
                            gamma: unit.clone(),
                            lambda_ideal: unit,
                            lambda: 0,
                        });
                        continue;
                    }
                    canonical(prev.gamma.with_generators([self.cuts[k].clone()])?)
                }
            };

            let dim_check = check_cycle_dimension(&total, k);
            let ok = dim_check.passed;
            chain.log.push(dim_check);
            if !ok {
                chain.failed_at = Some(k);
                return Ok(chain);
            }

            let mut gamma = canonical(saturate(&total, &self.split)?);
            // the top polar ideal is unmixed, and stray points in a polar
            // curve never reach the splitting locus after the next cut
            if self.purify_polar && k >= 2 && k < self.n && !gamma.is_unit() {
                gamma = canonical(top_dimensional_part(&gamma, k)?);
            }
            let lambda_ideal = if gamma.is_unit() {
                total.clone()
            } else {
                canonical(saturate(&total, &gamma)?)
            };

            let slice_check = check_le_slice(&lambda_ideal, k);
            let ok = slice_check.passed;
            let proper_point = slice_check.value;
            chain.log.push(slice_check);
            if !ok {
                chain.failed_at = Some(k);
                return Ok(chain);
            }
            let lambda = if proper_point < 0 {
                0
            } else {
                slice(&slice_part(&lambda_ideal, k)?, k).local_colength()?
            };

            if self.cross_check {
                let gslice = slice(&gamma, k);
                if gslice.local_dimension() <= 0 {
                    let gslice = slice(&slice_part(&gamma, k)?, k);
                    let whole = slice(&slice_part(&total, k)?, k).local_colength()?;
                    let polar = gslice.local_colength()?;
                    let diff = whole as i64 - polar as i64;
                    let passed = diff == lambda as i64;
                    chain.log.push(CheckRecord {
                        k,
                        kind: CheckKind::PolarDifference,
                        value: diff,
                        bound: lambda as i64,
                        passed,
                        note: format!("total {whole} minus polar {polar}"),
                    });
                    if !passed {
                        chain.failed_at = Some(k);
                        return Ok(chain);
                    }
                }
            }

            chain.steps.push(ChainStep {
                k,
                total,
                gamma,
                lambda_ideal,
                lambda,
            });
        }
        Ok(chain)
    }
}
