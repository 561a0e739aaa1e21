//! Ideal engine over the rationals: reduced Gröbner bases, normal forms,
//! elimination, quotients, saturation, dimension and colength, globally and
//! at the origin.

mod buchberger;
mod dimension;
mod ideal;
mod local;
mod ops;
mod order;

use std::sync::Arc;

pub use ideal::{is_groebner_basis, Ideal};
pub use ops::{
    dominant_part, eliminate, ideal_quotient, intersect, quotient_by_polynomial, saturate,
    saturate_by_polynomial, saturate_by_quotients, top_dimensional_part,
};
pub use order::MonomialOrder;

use crate::error::Result;
use crate::polyparse::Polynomial;

/// Reduced Gröbner basis of `ideal` for `order` (empty for the zero ideal).
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Arc<[Polynomial]> {
    ideal.groebner_basis(order)
}

pub fn normal_form(p: &Polynomial, ideal: &Ideal, order: MonomialOrder) -> Result<Polynomial> {
    ideal.normal_form(p, order)
}

pub fn krull_dimension(ideal: &Ideal) -> i64 {
    ideal.krull_dimension()
}

pub fn colength(ideal: &Ideal) -> Result<u64> {
    ideal.colength()
}

pub fn colength_at_origin(ideal: &Ideal) -> Result<u64> {
    ideal.colength_at_origin()
}

pub(crate) fn leading_monomial(
    p: &Polynomial,
    order: MonomialOrder,
) -> Option<crate::polyparse::Monomial> {
    p.terms()
        .map(|(m, _)| m)
        .max_by(|a, b| order.cmp(a, b))
        .cloned()
}

/// Sorts ascending by leading monomial, the layout of cached bases.
pub(crate) fn sort_by_leading(polys: &mut [Polynomial], order: MonomialOrder) {
    polys.sort_by(
        |a, b| match (leading_monomial(a, order), leading_monomial(b, order)) {
            (Some(x), Some(y)) => order.cmp(&x, &y),
            (x, y) => x.is_some().cmp(&y.is_some()),
        },
    );
}
