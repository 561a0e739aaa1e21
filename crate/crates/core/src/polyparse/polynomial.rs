use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::frame::VariableFrame;
use super::monomial::Monomial;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse polynomial with rational coefficients over a fixed variable frame.
///
/// Terms are kept in a map from exponent vector to a nonzero coefficient, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    frame: Arc<VariableFrame>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(frame: &Arc<VariableFrame>) -> Self {
        Polynomial {
            frame: frame.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(frame: &Arc<VariableFrame>, c: Rational) -> Self {
        let mut p = Self::zero(frame);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(frame.len()), c);
        }
        p
    }

    pub fn one(frame: &Arc<VariableFrame>) -> Self {
        Self::constant(frame, Rational::one())
    }

    pub fn var(frame: &Arc<VariableFrame>, index: usize) -> Self {
        Self::term(frame, Monomial::var(frame.len(), index), Rational::one())
    }

    pub fn term(frame: &Arc<VariableFrame>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), frame.len());
        let mut p = Self::zero(frame);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging repeats.
    pub fn from_terms<I>(frame: &Arc<VariableFrame>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(frame);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn frame(&self) -> &Arc<VariableFrame> {
        &self.frame
    }

    pub fn nvars(&self) -> usize {
        self.frame.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Variables that occur in some term, as a bit set.
    pub fn support_mask(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m.support_mask())
    }

    fn check_frame(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.frame, &other.frame) || self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_frame(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_frame(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_frame(other)?;
        let mut out = Polynomial::zero(&self.frame);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.frame);
        }
        Polynomial {
            frame: self.frame.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            frame: self.frame.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.frame);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to the variable at `index`
    /// (0-based).
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.nvars(),
            });
        }
        let mut out = Polynomial::zero(&self.frame);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[index] -= 1;
            out.add_term(d, c * rational(e as i64));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// one frame, which becomes the frame of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: images.len(),
                len: self.nvars(),
            });
        }
        let target = match images.first() {
            Some(p) => p.frame.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            if p.frame != target {
                return Err(Error::FrameMismatch);
            }
        }
        // powers[i][e] = images[i]^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(&target)])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Shift `x_i -> x_i + shift[i]`.
    pub fn translate(&self, shift: &[Rational]) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.nvars())
            .map(|i| {
                let mut p = Polynomial::var(&self.frame, i);
                p.add_term(Monomial::one(self.nvars()), shift[i].clone());
                p
            })
            .collect();
        self.substitute(&images).expect("same frame")
    }

    /// Re-expresses the polynomial over `target`, mapping variables by name.
    /// Fails when a variable that occurs in `self` is missing from `target`.
    pub fn embed(&self, target: &Arc<VariableFrame>) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self
            .frame
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.len());
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e.0[j] = x,
                    None => {
                        return Err(Error::Frame(format!(
                            "variable '{}' is absent from the target frame",
                            self.frame.names()[i]
                        )))
                    }
                }
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        // Divide by leading terms in the lexicographic storage order; a
        // remainder-free division in any term order proves divisibility.
        let (dlm, dlc) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.frame);
        while let Some((lm, lc)) = rem.terms.iter().next_back() {
            let q = lm.div(dlm)?;
            let c = lc / dlc;
            let step = divisor.mul_monomial(&q).scale(&c);
            quot.add_term(q, c);
            rem = &rem - &step;
        }
        Some(quot)
    }

    /// Scales so that the coefficient of the lexicographically largest term
    /// is one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Terms ordered for printing: descending total degree, then descending
    /// lexicographic exponent vector.
    fn display_order(&self) -> Vec<(&Monomial, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        ts
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (name, &e) in self.frame.names().iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operator forms panic on a frame mismatch; the `checked_*` methods report it.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("frame mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("frame mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("frame mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
