//! Milnor numbers by linear algebra on truncated Jacobian multiples.
//!
//! Let `J` be the Jacobian ideal and `m` the maximal ideal at 0. The
//! quotient `k[x]/(J + m^D)` is spanned by monomials of degree `< D`, and
//! `J + m^D` is spanned there by the truncations of `x^a ∂f/∂x_i` with
//! `|a| < D`. Its dimension `q(D)` is nondecreasing in `D`; once
//! `q(D) = q(D + 1)` we have `m^D ⊆ J + m^(D+1)`, so by Nakayama
//! `m^D ⊆ J` locally and `q(D)` is the local length `μ`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{OracleMethod, OracleResult};
use crate::error::{Error, Result};
use crate::polyparse::{Polynomial, Rational};

pub const DEFAULT_DEGREE_BOUND: usize = 40;

fn monomials_below(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    let mut layer = out.clone();
    for _ in 1..bound {
        let mut next = Vec::new();
        for m in &layer {
            // extend only from the last nonzero position to avoid repeats
            let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in start..n {
                let mut e = m.clone();
                e[i] += 1;
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

type SparseRow = BTreeMap<usize, Rational>;

/// Incremental echelon form over the rationals.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow) {
        while let Some((&lead, coeff)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&lead) else {
                let inv = Rational::one() / coeff;
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.pivots.insert(lead, row);
                return;
            };
            let factor = coeff.clone();
            for (c, v) in pivot {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `(dim k[x]/(J + m^D), number of spanning rows)`.
fn truncated_quotient(partials: &[Polynomial], n: usize, bound: u32) -> (u64, usize) {
    let columns = monomials_below(n, bound);
    let index: HashMap<&[u32], usize> = columns
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut echelon = Echelon::default();
    let mut rows = 0;
    for p in partials {
        for shift in &columns {
            let mut row = SparseRow::new();
            for (m, c) in p.terms() {
                let e: Vec<u32> = m
                    .exponents()
                    .iter()
                    .zip(shift)
                    .map(|(a, b)| a + b)
                    .collect();
                if let Some(&col) = index.get(e.as_slice()) {
                    row.insert(col, c.clone());
                }
            }
            if !row.is_empty() {
                rows += 1;
                echelon.insert(row);
            }
        }
    }
    ((columns.len() - echelon.rank()) as u64, rows)
}

/// Milnor number of `f` at 0, trying truncation degrees up to `degree_bound`.
pub fn milnor_via_macaulay(f: &Polynomial, degree_bound: usize) -> Result<OracleResult> {
    if f.is_constant() {
        return Err(Error::Oracle(
            "constant polynomial has no isolated critical point".into(),
        ));
    }
    let n = f.nvars();
    let partials = f.gradient();
    let mut previous: Option<u64> = None;
    for d in 1..=degree_bound {
        let (q, rows) = truncated_quotient(&partials, n, d as u32);
        if previous == Some(q) {
            return Ok(OracleResult {
                value: q as i64,
                method: OracleMethod::Macaulay,
                certificate: format!(
                    "dim k[x]/(J + m^{d}) = dim k[x]/(J + m^{}) = {q}; {rows} rows of degree < {d} reduced",
                    d - 1
                ),
            });
        }
        previous = Some(q);
    }
    Err(Error::NoStabilization {
        bound: degree_bound,
    })
}
