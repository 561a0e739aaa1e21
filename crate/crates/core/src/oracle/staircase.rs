//! Colengths of monomial ideals by walking the staircase.

use std::collections::{HashSet, VecDeque};

use super::{OracleMethod, OracleResult};
use crate::error::{Error, Result};
use crate::polyparse::Polynomial;

/// Number of monomials outside the ideal generated by the given terms.
pub fn monomial_colength(generators: &[Polynomial]) -> Result<OracleResult> {
    let gens: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    let Some(first) = gens.first() else {
        return Err(Error::Oracle("zero ideal is not zero-dimensional".into()));
    };
    let n = first.nvars();
    let mut corners: Vec<Vec<u32>> = Vec::new();
    for g in &gens {
        if g.num_terms() != 1 {
            return Err(Error::Oracle(format!("{g} is not a monomial")));
        }
        corners.push(g.terms().next().expect("one term").0.exponents().to_vec());
    }
    for i in 0..n {
        let pure = corners
            .iter()
            .any(|c| c[i] > 0 && c.iter().enumerate().all(|(j, &e)| j == i || e == 0));
        if !pure && !corners.iter().any(|c| c.iter().all(|&e| e == 0)) {
            return Err(Error::Oracle(
                "monomial ideal is not zero-dimensional".into(),
            ));
        }
    }
    let inside = |e: &[u32]| corners.iter().any(|c| c.iter().zip(e).all(|(a, b)| a <= b));
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    let origin = vec![0u32; n];
    if !inside(&origin) {
        seen.insert(origin.clone());
        queue.push_back(origin);
    }
    while let Some(e) = queue.pop_front() {
        for i in 0..n {
            let mut next = e.clone();
            next[i] += 1;
            if !inside(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let value = seen.len() as i64;
    Ok(OracleResult {
        value,
        method: OracleMethod::MonomialCount,
        certificate: format!(
            "{value} lattice points under a staircase with {} corners",
            corners.len()
        ),
    })
}
