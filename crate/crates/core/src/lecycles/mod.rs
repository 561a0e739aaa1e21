//! Affine Lê numbers: critical locus, relative polar ideals, Lê parts and
//! their intersection numbers, with properness checks and a seeded search
//! for generic coordinates.
//!
//! Coordinates `z_1, ..., z_N` are the frame variables after the linear
//! change of a [`CoordinateFrame`]: a polynomial `f` is studied through
//! `f ∘ L`, so `z_k` is the `k`-th frame variable of the substituted
//! polynomial.

mod induction;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub(crate) use induction::{check_cycle_dimension, check_le_slice, Induction};
pub use induction::{ChainStep, CheckKind, CheckRecord, GammaChain};

use crate::error::{Error, Result};
use crate::groebner::{saturate, Ideal, MonomialOrder};
use crate::polyparse::{LinearChange, Polynomial, VariableFrame};
use crate::rng::SplitMix64;

/// Entries of random coordinate changes are drawn from `{-B, ..., B}`.
pub const RANDOM_ENTRY_BOUND: i64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Affine,
    Levogel,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Affine => "affine",
            Mode::Levogel => "levogel",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    UserGiven,
    AutoGenericized { attempts: usize },
}

/// Ordered coordinates `z_1, ..., z_N` given by an invertible linear change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateFrame {
    pub frame: Arc<VariableFrame>,
    pub change: LinearChange,
    /// seed of the random stream the change was drawn from, if any
    pub seed: Option<u64>,
    pub provenance: Provenance,
}

impl CoordinateFrame {
    pub fn identity(frame: &Arc<VariableFrame>) -> Self {
        Self::user(LinearChange::identity(frame))
    }

    pub fn user(change: LinearChange) -> Self {
        CoordinateFrame {
            frame: change.frame().clone(),
            change,
            seed: None,
            provenance: Provenance::UserGiven,
        }
    }

    /// Coordinates `z_k = order[k]`, e.g. `["z", "y", "x"]`.
    pub fn reordering(frame: &Arc<VariableFrame>, order: &[&str]) -> Result<Self> {
        Ok(Self::user(LinearChange::reordering(frame, order)?))
    }

    /// `p` written in the frame's coordinates.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.change.apply(p)
    }

    pub fn attempts(&self) -> usize {
        match self.provenance {
            Provenance::UserGiven => 0,
            Provenance::AutoGenericized { attempts } => attempts,
        }
    }
}

/// Lê (or Lê-Vogel) numbers at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeNumbers {
    /// dimension of the relevant critical locus at 0; `-1` when empty there
    pub s: i64,
    /// `λ^k` for `0 <= k <= s`
    pub lambda: BTreeMap<usize, u64>,
    pub frame: CoordinateFrame,
    pub mode: Mode,
}

impl LeNumbers {
    pub fn get(&self, k: usize) -> u64 {
        self.lambda.get(&k).copied().unwrap_or(0)
    }

    /// `Σ_k (-1)^(e - k) λ^k`.
    pub fn alternating_sum(&self, e: usize) -> i64 {
        self.lambda
            .iter()
            .map(|(&k, &l)| {
                if (e + k).is_multiple_of(2) {
                    l as i64
                } else {
                    -(l as i64)
                }
            })
            .sum()
    }

    /// Equality of the numbers themselves, ignoring frame and mode.
    pub fn same_numbers(&self, other: &LeNumbers) -> bool {
        self.s == other.s && self.lambda == other.lambda
    }
}

pub(crate) fn collect_numbers(chain: &GammaChain, s: i64) -> Result<BTreeMap<usize, u64>> {
    let mut lambda = BTreeMap::new();
    for step in &chain.steps {
        if (step.k as i64) <= s {
            lambda.insert(step.k, step.lambda);
        } else if step.lambda != 0 {
            return Err(Error::Improper {
                k: step.k,
                detail: format!("Lê number {} above the critical dimension {s}", step.lambda),
            });
        }
    }
    Ok(lambda)
}

pub(crate) fn chain_failure(chain: &GammaChain) -> Error {
    match chain.failure() {
        Some(c) => Error::Improper {
            k: c.k,
            detail: c.to_string(),
        },
        None => Error::Improper {
            k: 0,
            detail: "incomplete chain".into(),
        },
    }
}

#[derive(Clone, Debug)]
pub struct CriticalLocus {
    pub ideal: Ideal,
    pub s: i64,
}

/// `Σf = V(∂f/∂z_1, ..., ∂f/∂z_N)` and its dimension at the origin.
pub fn critical_locus(f: &Polynomial) -> Result<CriticalLocus> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let ideal = Ideal::new(f.frame(), f.gradient())?;
    let s = ideal.local_dimension();
    Ok(CriticalLocus { ideal, s })
}

/// Relative polar ideal `(∂f/∂z_{k+1}, ..., ∂f/∂z_N) : (Σf)^∞` in the
/// frame's coordinates.
pub fn polar_gamma(f: &Polynomial, k: usize, frame: &CoordinateFrame) -> Result<Ideal> {
    let n = f.nvars();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let g = frame.apply(f)?;
    let sigma = critical_locus(&g)?.ideal;
    if k == n {
        return Ok(Ideal::zero(g.frame()));
    }
    let partials = Ideal::new(g.frame(), g.gradient()[k..].to_vec())?;
    let gamma = saturate(&partials, &sigma)?.canonical(MonomialOrder::DegRevLex);
    let dim = gamma.local_dimension();
    if dim > k as i64 {
        return Err(Error::Improper {
            k,
            detail: format!("polar ideal has dimension {dim} at 0"),
        });
    }
    Ok(gamma)
}

/// The downward induction for `f` in the given coordinates.
pub fn gamma_chain(f: &Polynomial, frame: &CoordinateFrame) -> Result<GammaChain> {
    let g = frame.apply(f)?;
    let sigma = critical_locus(&g)?.ideal;
    Induction {
        frame: g.frame(),
        n: g.nvars(),
        top: Ideal::zero(g.frame()),
        split: sigma,
        cuts: g.gradient(),
        cross_check: true,
        purify_polar: false,
    }
    .run()
}

/// Outcome of re-running the dimension checks on a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperReport {
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl ProperReport {
    /// Dimension checks are necessary conditions only, hence the wording.
    pub fn label(&self) -> String {
        match self.checks.iter().find(|c| !c.passed) {
            None if self.passed => "properness verified".into(),
            None => "properness not verified: incomplete chain".into(),
            Some(c) => format!("properness check failed at k = {}", c.k),
        }
    }
}

/// Recomputes the dimension checks for every level of `chain`.
pub fn verify_properness(chain: &GammaChain) -> ProperReport {
    let mut checks = Vec::new();
    for step in &chain.steps {
        checks.push(check_cycle_dimension(&step.total, step.k));
        checks.push(check_le_slice(&step.lambda_ideal, step.k));
    }
    if let Some(fail) = chain.failure() {
        checks.push(fail.clone());
    }
    let passed = chain.passed() && checks.iter().all(|c| c.passed);
    ProperReport { checks, passed }
}

/// Lê numbers of `f` at 0 in the given coordinates.
pub fn le_numbers_affine(
    f: &Polynomial,
    frame: &CoordinateFrame,
) -> Result<(LeNumbers, GammaChain)> {
    let s = critical_locus(f)?.s;
    let chain = gamma_chain(f, frame)?;
    if !chain.passed() {
        return Err(chain_failure(&chain));
    }
    let lambda = collect_numbers(&chain, s)?;
    Ok((
        LeNumbers {
            s,
            lambda,
            frame: frame.clone(),
            mode: Mode::Affine,
        },
        chain,
    ))
}

/// Random invertible change with entries in `{-B, ..., B}`.
pub(crate) fn random_change(frame: &Arc<VariableFrame>, rng: &mut SplitMix64) -> LinearChange {
    let n = frame.len();
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.small_int(RANDOM_ENTRY_BOUND)).collect())
            .collect();
        if let Ok(change) = LinearChange::from_integers(frame, &rows) {
            return change;
        }
    }
}

/// Tries the identity, then seeded random changes, until `attempt` accepts
/// one. `attempt` returns `Ok(Err(reason))` to reject a frame and `Err` to
/// abort the search.
pub(crate) fn search_frames<T>(
    frame: &Arc<VariableFrame>,
    seed: u64,
    budget: usize,
    mut attempt: impl FnMut(&CoordinateFrame) -> Result<std::result::Result<T, String>>,
) -> Result<T> {
    if budget == 0 {
        return Err(Error::InvalidJob("budget must be at least 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut log = Vec::new();
    for i in 1..=budget {
        let change = if i == 1 {
            LinearChange::identity(frame)
        } else {
            random_change(frame, &mut rng)
        };
        let candidate = CoordinateFrame {
            frame: frame.clone(),
            change,
            seed: Some(seed),
            provenance: Provenance::AutoGenericized { attempts: i },
        };
        match attempt(&candidate)? {
            Ok(found) => return Ok(found),
            Err(reason) => log.push(format!("attempt {i}: {reason}")),
        }
    }
    Err(Error::BudgetExhausted {
        attempts: budget,
        log,
    })
}

pub(crate) fn reject_improper<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::Improper { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

/// Lê numbers in the first frame of the seeded search that passes every
/// check.
pub fn le_numbers_affine_auto(
    f: &Polynomial,
    seed: u64,
    budget: usize,
) -> Result<(LeNumbers, GammaChain)> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    search_frames(f.frame(), seed, budget, |cf| {
        reject_improper(le_numbers_affine(f, cf))
    })
}

/// The first frame of the seeded search for which the affine induction
/// passes its checks.
pub fn auto_genericize(f: &Polynomial, seed: u64, budget: usize) -> Result<CoordinateFrame> {
    le_numbers_affine_auto(f, seed, budget).map(|(numbers, _)| numbers.frame)
}

/// How coordinates are chosen for a pipeline run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameChoice {
    Given(CoordinateFrame),
    /// identity first, then seeded random changes
    Search {
        seed: u64,
        budget: usize,
    },
}

impl FrameChoice {
    pub fn search(seed: u64, budget: usize) -> Self {
        FrameChoice::Search { seed, budget }
    }
}

/// Affine Lê numbers with the frame given or searched for.
pub fn le_numbers(f: &Polynomial, choice: &FrameChoice) -> Result<(LeNumbers, GammaChain)> {
    match choice {
        FrameChoice::Given(frame) => le_numbers_affine(f, frame),
        FrameChoice::Search { seed, budget } => le_numbers_affine_auto(f, *seed, *budget),
    }
}
