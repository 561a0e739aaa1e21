//! Buchberger's algorithm with the Gebauer–Möller pair update.
//!
//! Polynomials are handled here as term vectors sorted ascending in the
//! active monomial order, so the leading term is the last entry.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::order::MonomialOrder;
use crate::polyparse::{Monomial, Polynomial, Rational, VariableFrame};

#[derive(Clone, Debug)]
pub(crate) struct SPoly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl SPoly {
    pub fn from_polynomial(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        SPoly { terms }
    }

    pub fn to_polynomial(&self, frame: &Arc<VariableFrame>) -> Polynomial {
        Polynomial::from_terms(frame, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero").1
    }

    pub fn make_monic(&mut self) {
        let inv = self.lc().recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self - c * m * g`.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &SPoly, order: MonomialOrder) -> SPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(gm, gc)| (gm.mul(m), gc * c))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, -bc));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let v = ac - bc;
                    if !v.is_zero() {
                        out.push((am.clone(), v));
                    }
                }
            }
        }
        SPoly { terms: out }
    }
}

/// Full reduction of `p` modulo `basis` (remainder of multivariate division).
pub(crate) fn reduce(p: &SPoly, basis: &[&SPoly], order: MonomialOrder) -> SPoly {
    let mut work = p.clone();
    // irreducible terms, collected in descending order
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((lm, lc)) = work.terms.last() {
        let divisor = basis.iter().find(|g| lm.divisible_by(g.lm()));
        match divisor {
            Some(g) => {
                let q = lm.div(g.lm()).unwrap();
                let c = lc / g.lc();
                work = work.sub_scaled(&c, &q, g, order);
            }
            None => rem.push(work.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    SPoly { terms: rem }
}

pub(crate) fn s_polynomial(f: &SPoly, g: &SPoly, order: MonomialOrder) -> SPoly {
    let lcm = f.lm().lcm(g.lm());
    let mf = lcm.div(f.lm()).unwrap();
    let mg = lcm.div(g.lm()).unwrap();
    let zero = SPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&-f.lc().recip(), &mf, f, order);
    a.sub_scaled(&g.lc().recip(), &mg, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    order: MonomialOrder,
    polys: Vec<SPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn active_refs(&self) -> Vec<&SPoly> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm().clone();

        let mut c: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lh.lcm(self.polys[g].lm())))
            .collect();
        let mut d: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = c.pop() {
            let coprime = lh.coprime(self.polys[g1].lm());
            let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l1.divisible_by(l2));
            if coprime || !dominated {
                d.push((g1, l1));
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|(g, _)| !lh.coprime(self.polys[*g].lm()))
            .map(|(g, l)| Pair { i: g, j: h, lcm: l })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(p.lcm.divisible_by(&lh)
                && lh.lcm(polys[p.i].lm()) != p.lcm
                && lh.lcm(polys[p.j].lm()) != p.lcm)
        });
        self.pairs.extend(e);

        self.active.retain(|&g| !polys[g].lm().divisible_by(&lh));
        self.active.push(h);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        // normal strategy: smallest lcm first
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if self.order.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm) == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn insert(&mut self, mut p: SPoly) -> bool {
        p.make_monic();
        let unit = p.lm().is_one();
        self.polys.push(p);
        let h = self.polys.len() - 1;
        self.update(h);
        unit
    }
}

fn unit_basis(nvars: usize) -> Vec<SPoly> {
    vec![SPoly {
        terms: vec![(Monomial::one(nvars), Rational::one())],
    }]
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted ascending
/// by leading monomial. The zero ideal yields an empty basis.
pub(crate) fn reduced_groebner_basis(
    gens: &[SPoly],
    nvars: usize,
    order: MonomialOrder,
) -> Vec<SPoly> {
    let mut st = State {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    let mut inputs: Vec<&SPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in inputs {
        let r = reduce(g, &st.active_refs(), order);
        if r.is_zero() {
            continue;
        }
        if st.insert(r) {
            return unit_basis(nvars);
        }
    }

    while let Some(pair) = st.pop_pair() {
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j], order);
        let r = reduce(&s, &st.active_refs(), order);
        if r.is_zero() {
            continue;
        }
        if st.insert(r) {
            return unit_basis(nvars);
        }
    }

    // interreduce: leading monomials are already pairwise non-dividing
    let mut basis: Vec<SPoly> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for k in 0..basis.len() {
        let (lead, tail) = {
            let mut p = basis[k].clone();
            let lead = p.terms.pop().unwrap();
            (lead, p)
        };
        let others: Vec<&SPoly> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g)
            .collect();
        let mut reduced = reduce(&tail, &others, order);
        reduced.terms.push(lead);
        basis[k] = reduced;
    }
    basis
}

/// Buchberger criterion: every S-polynomial of `basis` reduces to zero.
pub(crate) fn satisfies_buchberger_criterion(basis: &[SPoly], order: MonomialOrder) -> bool {
    let refs: Vec<&SPoly> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !reduce(&s, &refs, order).is_zero() {
                return false;
            }
        }
    }
    true
}
