//! Elimination, intersection, ideal quotients and saturation.

use std::sync::Arc;

use super::ideal::Ideal;
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyparse::{Monomial, Polynomial, VariableFrame};

/// `I ∩ k[remaining variables]`, returned over the frame without `vars`.
pub fn eliminate(ideal: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let frame = ideal.frame();
    let n = frame.len();
    let mut drop = vec![false; n];
    let mut mask = 0u64;
    for &v in vars {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, len: n });
        }
        drop[v] = true;
        mask |= 1 << v;
    }
    let target = frame.restricted(&drop);
    if target.is_empty() {
        return Err(Error::Frame("cannot eliminate every variable".into()));
    }
    Ok(eliminate_into(ideal, mask, &target))
}

/// Elimination of the `mask` variables, embedding the survivors into
/// `target` (which must contain every unmasked variable name).
fn eliminate_into(ideal: &Ideal, mask: u64, target: &Arc<VariableFrame>) -> Ideal {
    let order = MonomialOrder::Elimination { mask };
    let basis = ideal.groebner_basis(order);
    let kept: Vec<Polynomial> = basis
        .iter()
        .filter(|g| g.support_mask() & mask == 0)
        .map(|g| g.embed(target).expect("survivor lives in target frame"))
        .collect();
    if kept.is_empty() {
        return Ideal::zero(target);
    }
    // Survivors are the reduced basis of the elimination ideal for the
    // restricted order, which is degree reverse lexicographic on the target.
    let mut basis = kept.clone();
    super::sort_by_leading(&mut basis, MonomialOrder::DegRevLex);
    Ideal::from_parts(target, kept).with_known_basis(MonomialOrder::DegRevLex, basis)
}

fn with_aux_variable(ideal: &Ideal) -> (Arc<VariableFrame>, Vec<Polynomial>, Polynomial) {
    let big = ideal.frame().extended(&["t"]);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&big).expect("subframe"))
        .collect();
    let t = Polynomial::var(&big, big.len() - 1);
    (big, gens, t)
}

fn aux_mask(frame: &Arc<VariableFrame>) -> u64 {
    1 << frame.len()
}

/// Saturation by a single polynomial, `I : g^∞`, via `I + (t g - 1)`.
pub fn saturate_by_polynomial(ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if g.frame() != ideal.frame() {
        return Err(Error::FrameMismatch);
    }
    if g.is_zero() {
        return Ok(Ideal::unit(ideal.frame()));
    }
    if g.is_constant() || ideal.is_zero() {
        return Ok(ideal.clone());
    }
    let (big, mut gens, t) = with_aux_variable(ideal);
    let gb = g.embed(&big)?;
    gens.push(&(&t * &gb) - &Polynomial::one(&big));
    let ext = Ideal::from_parts(&big, gens);
    Ok(eliminate_into(&ext, aux_mask(ideal.frame()), ideal.frame()))
}

/// `I ∩ J` via `t I + (1 - t) J`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(a.frame()));
    }
    if a.is_unit() {
        return Ok(b.clone());
    }
    if b.is_unit() {
        return Ok(a.clone());
    }
    let (big, ga, t) = with_aux_variable(a);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens: Vec<Polynomial> = ga.iter().map(|g| &t * g).collect();
    for g in b.generators() {
        gens.push(&one_minus_t * &g.embed(&big)?);
    }
    let ext = Ideal::from_parts(&big, gens);
    Ok(eliminate_into(&ext, aux_mask(a.frame()), a.frame()))
}

/// `I : (g)`, computed as `(I ∩ (g)) / g`.
pub fn quotient_by_polynomial(ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if g.frame() != ideal.frame() {
        return Err(Error::FrameMismatch);
    }
    if g.is_zero() {
        return Ok(Ideal::unit(ideal.frame()));
    }
    let principal = Ideal::from_parts(ideal.frame(), vec![g.clone()]);
    let meet = intersect(ideal, &principal)?;
    let gens = meet
        .generators()
        .iter()
        .map(|h| h.div_exact(g).expect("elements of (g) are divisible by g"))
        .collect();
    Ok(Ideal::from_parts(ideal.frame(), gens))
}

fn nonzero_basis(j: &Ideal) -> Vec<Polynomial> {
    j.basis().iter().filter(|g| !g.is_zero()).cloned().collect()
}

fn intersect_all(frame: &Arc<VariableFrame>, parts: Vec<Ideal>) -> Result<Ideal> {
    let mut iter = parts.into_iter();
    let mut acc = match iter.next() {
        Some(first) => first,
        None => return Ok(Ideal::unit(frame)),
    };
    for p in iter {
        acc = intersect(&acc, &p)?.canonical(MonomialOrder::DegRevLex);
    }
    Ok(acc)
}

/// `I : J = ∩_g (I : g)` over generators `g` of `J`.
pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if i.frame() != j.frame() {
        return Err(Error::FrameMismatch);
    }
    let parts = nonzero_basis(j)
        .iter()
        .map(|g| quotient_by_polynomial(i, g).map(|q| q.canonical(MonomialOrder::DegRevLex)))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(i.frame(), parts)
}

/// `I : J^∞ = ∩_g (I : g^∞)`, one Rabinowitsch elimination per generator of
/// the reduced basis of `J`.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if i.frame() != j.frame() {
        return Err(Error::FrameMismatch);
    }
    let gens = nonzero_basis(j);
    if gens.iter().any(Polynomial::is_constant) {
        return Ok(i.clone());
    }
    let parts = gens
        .iter()
        .map(|g| saturate_by_polynomial(i, g).map(|s| s.canonical(MonomialOrder::DegRevLex)))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(i.frame(), parts)
}

/// `I : J^∞` as the stable value of `I, I : J, (I : J) : J, ...`.
pub fn saturate_by_quotients(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let mut current = i.canonical(MonomialOrder::DegRevLex);
    loop {
        let next = ideal_quotient(&current, j)?.canonical(MonomialOrder::DegRevLex);
        if next.same_ideal(&current) {
            return Ok(next);
        }
        current = next;
    }
}

/// Leading coefficient of `g` as a polynomial in the unmasked variables,
/// for the block order eliminating `mask`.
fn block_leading_coefficient(g: &Polynomial, mask: u64) -> Polynomial {
    let order = MonomialOrder::Elimination { mask };
    let outer = |m: &Monomial| {
        let e: Vec<u32> = m
            .exponents()
            .iter()
            .enumerate()
            .map(|(i, &x)| if (mask >> i) & 1 == 1 { x } else { 0 })
            .collect();
        Monomial::from_exponents(&e)
    };
    let lead = g
        .terms()
        .map(|(m, _)| outer(m))
        .max_by(|a, b| order.cmp(a, b))
        .expect("nonzero");
    let terms = g
        .terms()
        .filter(|(m, _)| outer(m) == lead)
        .map(|(m, c)| (m.div(&lead).expect("divisible"), c.clone()));
    Polynomial::from_terms(g.frame(), terms)
}

/// Intersection of the primary components of `I` that dominate the
/// coordinate space of `vars`, i.e. the contraction of `I k(vars)[rest]`.
/// Computed as `I : h^∞` with `h` the product of the leading coefficients of
/// a block Gröbner basis. The unit ideal when `I` meets `k[vars]`.
pub fn dominant_part(ideal: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let n = ideal.frame().len();
    let mut mask = (1u64 << n) - 1;
    for &v in vars {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, len: n });
        }
        mask &= !(1 << v);
    }
    let basis = ideal.groebner_basis(MonomialOrder::Elimination { mask });
    if basis.is_empty() {
        return Ok(ideal.clone());
    }
    if basis.iter().any(|g| g.support_mask() & mask == 0) {
        return Ok(Ideal::unit(ideal.frame()));
    }
    let mut coefficients: Vec<Polynomial> = Vec::new();
    for g in basis.iter() {
        let lc = block_leading_coefficient(g, mask).monic();
        if !lc.is_constant() && !coefficients.contains(&lc) {
            coefficients.push(lc);
        }
    }
    let mut current = ideal.canonical(MonomialOrder::DegRevLex);
    for h in &coefficients {
        current = saturate_by_polynomial(&current, h)?.canonical(MonomialOrder::DegRevLex);
    }
    Ok(current)
}

/// Intersection of the primary components of dimension `dim`: every such
/// component dominates some coordinate subspace of that dimension, and no
/// smaller component dominates any.
pub fn top_dimensional_part(ideal: &Ideal, dim: usize) -> Result<Ideal> {
    let n = ideal.frame().len();
    if dim > n {
        return Err(Error::IndexOutOfRange { index: dim, len: n });
    }
    let mut parts = Vec::new();
    for set in 0u64..(1u64 << n) {
        if set.count_ones() as usize != dim {
            continue;
        }
        let vars: Vec<usize> = (0..n).filter(|i| (set >> i) & 1 == 1).collect();
        let part = dominant_part(ideal, &vars)?;
        if !part.is_unit() {
            parts.push(part);
        }
    }
    intersect_all(ideal.frame(), parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyparse::parse_polynomial;

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
    fn elimination_examples() {
        let f = VariableFrame::new(["w", "x", "y"]).unwrap();
        let e = eliminate(&ideal(&f, &["w - x^2", "w - y"]), &[0]).unwrap();
        let g = VariableFrame::new(["x", "y"]).unwrap();
        assert!(e.same_ideal(&ideal(&g, &["x^2 - y"])));

        let e2 = eliminate(&ideal(&g, &["x"]), &[1]).unwrap();
        let h = VariableFrame::new(["x"]).unwrap();
        assert!(e2.same_ideal(&ideal(&h, &["x"])));
    }

    #[test]
    fn rabinowitsch_matches_elimination_identity() {
        // eliminate((t*g - 1) + I, {t}) equals the saturation of I by g
        let f = VariableFrame::new(["t", "x", "y"]).unwrap();
        let ext = ideal(&f, &["t*x - 1", "x*y"]);
        let e = eliminate(&ext, &[0]).unwrap();
        let g = VariableFrame::new(["x", "y"]).unwrap();
        assert!(e.same_ideal(&ideal(&g, &["y"])));
        let s = saturate_by_polynomial(&ideal(&g, &["x*y"]), &parse_polynomial("x", &g).unwrap())
            .unwrap();
        assert!(s.same_ideal(&e));
    }

    #[test]
    fn quotients_and_saturations() {
        let f = VariableFrame::new(["x", "y"]).unwrap();
        let sat = saturate(&ideal(&f, &["x*y"]), &ideal(&f, &["x"])).unwrap();
        assert!(sat.same_ideal(&ideal(&f, &["y"])));
        let sat2 = saturate(&ideal(&f, &["x^2"]), &ideal(&f, &["x"])).unwrap();
        assert!(sat2.is_unit());
        let q = ideal_quotient(&ideal(&f, &["x^2*y"]), &ideal(&f, &["x"])).unwrap();
        assert!(q.same_ideal(&ideal(&f, &["x*y"])));
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let f = VariableFrame::new(["x", "y"]).unwrap();
        let i = intersect(&ideal(&f, &["x"]), &ideal(&f, &["y"])).unwrap();
        assert!(i.same_ideal(&ideal(&f, &["x*y"])));
    }

    #[test]
    fn saturation_routes_agree() {
        let f = VariableFrame::new(["x", "y", "z"]).unwrap();
        let i = ideal(&f, &["x^2*y", "x*y^2*z", "x^3"]);
        let j = ideal(&f, &["x", "y*z"]);
        let a = saturate(&i, &j).unwrap();
        let b = saturate_by_quotients(&i, &j).unwrap();
        assert!(a.same_ideal(&b));
        // idempotent
        assert!(saturate(&a, &j).unwrap().same_ideal(&a));
    }

    #[test]
    fn embedded_point_is_removed() {
        let f = VariableFrame::new(["x", "y"]).unwrap();
        // the line y = 0 with an embedded point at the origin
        let i = ideal(&f, &["y^2", "x*y"]);
        assert!(dominant_part(&i, &[0])
            .unwrap()
            .same_ideal(&ideal(&f, &["y"])));
        assert!(top_dimensional_part(&i, 1)
            .unwrap()
            .same_ideal(&ideal(&f, &["y"])));
        // both axes dominate some coordinate line, a stray point does not
        let j = ideal(&f, &["x*y*(x-1)", "x*y*(y-1)"]);
        assert!(top_dimensional_part(&j, 1)
            .unwrap()
            .same_ideal(&ideal(&f, &["x*y"])));
        assert!(dominant_part(&ideal(&f, &["x"]), &[0]).unwrap().is_unit());
    }
}
