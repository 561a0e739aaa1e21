//! Dimension and colength from leading monomials.

use super::ideal::Ideal;
use super::ops::{saturate, saturate_by_quotients};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyparse::{Monomial, Polynomial};

/// Krull dimension of `k[x]/(m_1, ..., m_r)`: the size of a largest set of
/// variables containing the support of no generator. `-1` if some generator
/// is the monomial 1.
pub(crate) fn monomial_ideal_dimension(gens: &[Monomial], nvars: usize) -> i64 {
    if gens.iter().any(Monomial::is_one) {
        return -1;
    }
    let supports: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
    let mut best = 0i64;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// Number of monomials outside the monomial ideal, or `None` when infinite.
pub(crate) fn count_standard_monomials(gens: &[Monomial], nvars: usize) -> Option<u64> {
    if gens.iter().any(Monomial::is_one) {
        return Some(0);
    }
    // a pure power of every variable bounds the staircase
    let mut bounds = vec![u32::MAX; nvars];
    for g in gens {
        let nz: Vec<usize> = (0..nvars).filter(|&i| g.exponents()[i] > 0).collect();
        if nz.len() == 1 {
            let i = nz[0];
            bounds[i] = bounds[i].min(g.exponents()[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut count = 0u64;
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exponents(&exps);
        if !gens.iter().any(|g| m.divisible_by(g)) {
            count += 1;
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(count);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub(crate) fn leading_monomials(basis: &[Polynomial], order: MonomialOrder) -> Vec<Monomial> {
    basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            g.terms()
                .map(|(m, _)| m)
                .max_by(|a, b| order.cmp(a, b))
                .expect("nonzero")
                .clone()
        })
        .collect()
}

impl Ideal {
    /// Dimension of V(I) in affine space; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        let lms = leading_monomials(&self.basis(), MonomialOrder::DegRevLex);
        monomial_ideal_dimension(&lms, self.frame().len())
    }

    /// Vector-space dimension of `k[x]/I`.
    pub fn colength(&self) -> Result<u64> {
        let lms = leading_monomials(&self.basis(), MonomialOrder::DegRevLex);
        count_standard_monomials(&lms, self.frame().len()).ok_or(Error::NotZeroDimensional)
    }

    /// Local multiplicity at the origin of a zero-dimensional ideal, as the
    /// total colength minus the colength of the part away from the origin
    /// `I : m^∞`.
    pub fn colength_at_origin(&self) -> Result<u64> {
        let total = self.colength()?;
        let m = Ideal::maximal_at_origin(self.frame());
        let away = saturate(self, &m)?;
        Ok(total - away.colength()?)
    }

    /// Same quantity as [`Ideal::colength_at_origin`], with the saturation
    /// computed by iterated quotients.
    pub fn colength_at_origin_by_quotients(&self) -> Result<u64> {
        let total = self.colength()?;
        let m = Ideal::maximal_at_origin(self.frame());
        let away = saturate_by_quotients(self, &m)?;
        Ok(total - away.colength()?)
    }
}
