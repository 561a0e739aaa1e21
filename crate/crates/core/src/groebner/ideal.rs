use std::fmt;
use std::sync::{Arc, Mutex};

use super::buchberger::{reduce, reduced_groebner_basis, satisfies_buchberger_criterion, SPoly};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyparse::{Polynomial, VariableFrame};

type BasisCache = Arc<Mutex<Vec<(MonomialOrder, Arc<[Polynomial]>)>>>;

/// Ideal of the polynomial ring over a frame, given by generators.
///
/// Reduced Gröbner bases are computed on demand and cached per monomial
/// order. Clones share the cache; a basis is published under the lock only
/// once it is complete.
#[derive(Clone)]
pub struct Ideal {
    frame: Arc<VariableFrame>,
    generators: Vec<Polynomial>,
    cache: BasisCache,
}

impl Ideal {
    pub fn new(frame: &Arc<VariableFrame>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.frame() != frame {
                return Err(Error::FrameMismatch);
            }
        }
        Ok(Self::from_parts(frame, generators))
    }

    pub(crate) fn from_parts(frame: &Arc<VariableFrame>, generators: Vec<Polynomial>) -> Self {
        Ideal {
            frame: frame.clone(),
            generators,
            cache: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub fn zero(frame: &Arc<VariableFrame>) -> Self {
        Self::from_parts(frame, vec![Polynomial::zero(frame)])
    }

    pub fn unit(frame: &Arc<VariableFrame>) -> Self {
        Self::from_parts(frame, vec![Polynomial::one(frame)])
    }

    /// The ideal generated by the listed variables.
    pub fn variables(frame: &Arc<VariableFrame>, indices: impl IntoIterator<Item = usize>) -> Self {
        let gens: Vec<Polynomial> = indices
            .into_iter()
            .map(|i| Polynomial::var(frame, i))
            .collect();
        if gens.is_empty() {
            Self::zero(frame)
        } else {
            Self::from_parts(frame, gens)
        }
    }

    /// The maximal ideal of the origin.
    pub fn maximal_at_origin(frame: &Arc<VariableFrame>) -> Self {
        Self::variables(frame, 0..frame.len())
    }

    pub fn frame(&self) -> &Arc<VariableFrame> {
        &self.frame
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis for `order`; empty for the zero ideal.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Arc<[Polynomial]> {
        if let Some(b) = self.cached(order) {
            return b;
        }
        let gens: Vec<SPoly> = self
            .generators
            .iter()
            .map(|g| SPoly::from_polynomial(g, order))
            .collect();
        let basis: Arc<[Polynomial]> = reduced_groebner_basis(&gens, self.frame.len(), order)
            .iter()
            .map(|g| g.to_polynomial(&self.frame))
            .collect();
        let mut cache = self.cache.lock().expect("basis cache poisoned");
        if let Some((_, b)) = cache.iter().find(|(o, _)| *o == order) {
            return b.clone();
        }
        cache.push((order, basis.clone()));
        basis
    }

    fn cached(&self, order: MonomialOrder) -> Option<Arc<[Polynomial]>> {
        let cache = self.cache.lock().expect("basis cache poisoned");
        cache
            .iter()
            .find(|(o, _)| *o == order)
            .map(|(_, b)| b.clone())
    }

    /// Every basis computed so far, with its order.
    pub fn cached_bases(&self) -> Vec<(MonomialOrder, Arc<[Polynomial]>)> {
        self.cache.lock().expect("basis cache poisoned").clone()
    }

    /// Default basis (degree reverse lexicographic).
    pub fn basis(&self) -> Arc<[Polynomial]> {
        self.groebner_basis(MonomialOrder::DegRevLex)
    }

    /// Seeds the cache with a basis known to be the reduced basis for `order`.
    pub(crate) fn with_known_basis(self, order: MonomialOrder, basis: Vec<Polynomial>) -> Self {
        self.cache
            .lock()
            .expect("basis cache poisoned")
            .push((order, basis.into()));
        self
    }

    /// Ideal generated by a reduced basis of this ideal for `order`, with the
    /// basis pre-cached. Keeps generator lists short.
    pub(crate) fn canonical(&self, order: MonomialOrder) -> Self {
        let basis = self.groebner_basis(order).to_vec();
        let gens = if basis.is_empty() {
            vec![Polynomial::zero(&self.frame)]
        } else {
            basis.clone()
        };
        Ideal::from_parts(&self.frame, gens).with_known_basis(order, basis)
    }

    pub fn normal_form(&self, p: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        if p.frame() != &self.frame {
            return Err(Error::FrameMismatch);
        }
        let basis = self.groebner_basis(order);
        let sb: Vec<SPoly> = basis
            .iter()
            .map(|g| SPoly::from_polynomial(g, order))
            .collect();
        let refs: Vec<&SPoly> = sb.iter().collect();
        Ok(reduce(&SPoly::from_polynomial(p, order), &refs, order).to_polynomial(&self.frame))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p, MonomialOrder::DegRevLex)
            .map(|r| r.is_zero())
            .unwrap_or(false)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.basis().iter().any(Polynomial::is_constant)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(Polynomial::is_zero)
    }

    /// Equality of ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.frame == other.frame && self.basis() == other.basis()
    }

    /// Whether the origin lies on V(I).
    pub fn vanishes_at_origin(&self) -> bool {
        self.basis()
            .iter()
            .all(|g| g.constant_term() == num_traits::Zero::zero())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Ideal::from_parts(&self.frame, gens))
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        for g in extra {
            if g.frame() != &self.frame {
                return Err(Error::FrameMismatch);
            }
            gens.push(g);
        }
        Ok(Ideal::from_parts(&self.frame, gens))
    }

    /// Ideal with each generator transformed by `f`, over `frame`.
    pub fn map_generators<F>(&self, frame: &Arc<VariableFrame>, f: F) -> Result<Ideal>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let gens = self.generators.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ideal::new(frame, gens)
    }

    /// Re-checks the Buchberger criterion on every cached basis.
    pub fn verify_cached_bases(&self) -> bool {
        self.cached_bases()
            .iter()
            .all(|(order, b)| is_groebner_basis(b, *order))
    }
}

/// Whether every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[Polynomial], order: MonomialOrder) -> bool {
    let sb: Vec<SPoly> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|g| SPoly::from_polynomial(g, order))
        .collect();
    satisfies_buchberger_criterion(&sb, order)
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}
