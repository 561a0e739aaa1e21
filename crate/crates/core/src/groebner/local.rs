//! Invariants of the local ring at the origin.
//!
//! A Gröbner basis of the homogenized generators for
//! [`MonomialOrder::LocalHomogenized`] dehomogenizes to a standard basis of
//! `I k[x]_(x)` for the negative degree reverse lexicographic order. Its
//! leading monomials carry the local dimension and, for isolated points, the
//! local colength, without ever leaving global Buchberger.

use std::sync::Arc;

use super::dimension::{count_standard_monomials, leading_monomials, monomial_ideal_dimension};
use super::ideal::Ideal;
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyparse::{Monomial, Polynomial};

fn homogenize(p: &Polynomial, target: &Arc<crate::polyparse::VariableFrame>) -> Polynomial {
    let n = p.nvars();
    let d = p.total_degree().unwrap_or(0);
    Polynomial::from_terms(
        target,
        p.terms().map(|(m, c)| {
            let mut e: Vec<u32> = m.exponents().to_vec();
            e.push(d - m.degree());
            debug_assert_eq!(e.len(), n + 1);
            (Monomial::from_exponents(&e), c.clone())
        }),
    )
}

/// Leading monomials of a standard basis at the origin.
pub(crate) fn local_leading_monomials(ideal: &Ideal) -> Vec<Monomial> {
    let frame = ideal.frame();
    let n = frame.len();
    let big = frame.extended(&["h"]);
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| homogenize(g, &big))
        .collect();
    if gens.is_empty() {
        return Vec::new();
    }
    let hom = Ideal::from_parts(&big, gens);
    let basis = hom.groebner_basis(MonomialOrder::LocalHomogenized);
    let mut lms: Vec<Monomial> = leading_monomials(&basis, MonomialOrder::LocalHomogenized)
        .into_iter()
        .map(|m| Monomial::from_exponents(&m.exponents()[..n]))
        .collect();
    lms.sort();
    lms.dedup();
    lms
}

impl Ideal {
    /// Dimension of the germ of V(I) at the origin; `-1` when the origin is
    /// not on V(I).
    pub fn local_dimension(&self) -> i64 {
        monomial_ideal_dimension(&local_leading_monomials(self), self.frame().len())
    }

    /// Multiplicity of the origin as an isolated point of V(I): the length
    /// of the local ring `k[x]_(x) / I`. Zero when the origin is not on V(I).
    pub fn local_colength(&self) -> Result<u64> {
        let lms = local_leading_monomials(self);
        if monomial_ideal_dimension(&lms, self.frame().len()) > 0 {
            return Err(Error::NotIsolatedAtOrigin {
                what: format!("V{self:?}"),
            });
        }
        Ok(count_standard_monomials(&lms, self.frame().len()).expect("zero-dimensional"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyparse::{parse_polynomial, VariableFrame};

    fn ideal(frame: &Arc<VariableFrame>, gens: &[&str]) -> Ideal {
        Ideal::new(
            frame,
            gens.iter()
                .map(|g| parse_polynomial(g, frame).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn local_invariants() {
        let f = VariableFrame::new(["x", "y"]).unwrap();
        assert_eq!(ideal(&f, &["x*(x-1)", "y"]).local_colength(), Ok(1));
        assert_eq!(ideal(&f, &["x-1", "y"]).local_colength(), Ok(0));
        assert_eq!(ideal(&f, &["x-1", "y"]).local_dimension(), -1);
        assert_eq!(ideal(&f, &["3*x^2", "2*y"]).local_colength(), Ok(2));
        // the line y = 1 does not pass through the origin, the point does
        assert_eq!(ideal(&f, &["x*(y-1)", "y*(y-1)"]).local_dimension(), 0);
        assert_eq!(ideal(&f, &["x*(y-1)", "y*(y-1)"]).local_colength(), Ok(1));
        assert_eq!(ideal(&f, &["x*y"]).local_dimension(), 1);
        assert!(ideal(&f, &["x*y"]).local_colength().is_err());
        assert_eq!(Ideal::zero(&f).local_dimension(), 2);
    }

    #[test]
    fn local_colength_ignores_far_components() {
        let f = VariableFrame::new(["x", "y", "z"]).unwrap();
        // fat point at 0 plus the plane x = 1
        let i = ideal(&f, &["x^2*(x-1)", "y*(x-1)", "z*(x-1)"]);
        assert_eq!(i.local_dimension(), 0);
        assert_eq!(i.local_colength(), Ok(2));
        assert_eq!(i.krull_dimension(), 2);
    }
}
