use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{buchberger, GroebnerBasis};
use crate::error::{Error, Result};
use crate::polyarith::{MonomialOrder, PolyContext, Polynomial};

/// An ideal of a polynomial ring given by generators, with lazily computed
/// reduced Groebner bases cached per monomial order.
pub struct Ideal {
    ctx: PolyContext,
    gens: Vec<Polynomial>,
    bases: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Self {
            ctx: self.ctx,
            gens: self.gens.clone(),
            bases: RwLock::new(self.bases.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal").field("gens", &self.gens).finish()
    }
}

impl Ideal {
    /// Generators must share `ctx` up to monomial order; they are re-sorted into it.
    pub fn new(ctx: PolyContext, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let gens = gens
            .into_iter()
            .map(|g| {
                ctx.check(&g.ctx().with_order(ctx.order))?;
                Ok(g.with_order(ctx.order))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ctx,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            bases: RwLock::new(HashMap::new()),
        })
    }

    pub fn zero(ctx: PolyContext) -> Self {
        Self {
            ctx,
            gens: Vec::new(),
            bases: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> PolyContext {
        self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced basis under the ideal's own order.
    pub fn basis(&self) -> Arc<GroebnerBasis> {
        self.basis_in(self.ctx.order)
    }

    /// Reduced basis under `order`. The cache is write-once: racing callers may
    /// both compute, but the first insertion wins and everyone sees it.
    pub fn basis_in(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(b) = self.bases.read().unwrap().get(&order) {
            return b.clone();
        }
        let computed = Arc::new(self.compute_basis(order, None).expect("consistent contexts"));
        let mut w = self.bases.write().unwrap();
        w.entry(order).or_insert(computed).clone()
    }

    /// Basis computation that gives up after `max_pairs` S-pair reductions.
    pub fn try_basis_in(&self, order: MonomialOrder, max_pairs: usize) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.bases.read().unwrap().get(&order) {
            return Ok(b.clone());
        }
        let computed = Arc::new(self.compute_basis(order, Some(max_pairs))?);
        let mut w = self.bases.write().unwrap();
        Ok(w.entry(order).or_insert(computed).clone())
    }

    fn compute_basis(&self, order: MonomialOrder, budget: Option<usize>) -> Result<GroebnerBasis> {
        if self.gens.is_empty() {
            return buchberger::buchberger(&[Polynomial::zero(self.ctx.with_order(order))], order);
        }
        buchberger::buchberger_with_budget(&self.gens, order, budget)
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit()
    }

    /// Membership test; `f` is re-sorted into the ideal's order when needed.
    pub fn try_contains(&self, f: &Polynomial) -> Result<bool> {
        self.ctx.check(&f.ctx().with_order(self.ctx.order))?;
        if f.is_zero() {
            return Ok(true);
        }
        let f = f.with_order(self.ctx.order);
        Ok(self.basis().reduce(&f).is_zero())
    }

    /// Panics when `f` lives in a different ring.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.try_contains(f).expect("polynomial and ideal contexts differ")
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Normal form of `f` modulo the ideal.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.basis().reduce(&f.with_order(self.ctx.order))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ctx.check(&other.ctx)?;
        Ideal::new(self.ctx, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ctx.check(&other.ctx)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(self.ctx, gens)
    }

    /// Checks that the cached basis generates the same ideal as the generators.
    pub fn basis_is_consistent(&self) -> bool {
        let gb = self.basis();
        let from_gens = self.gens.iter().all(|g| gb.reduce(g).is_zero());
        let back = Ideal {
            ctx: self.ctx,
            gens: self.gens.clone(),
            bases: RwLock::new(HashMap::new()),
        };
        let from_basis = gb.generators().iter().all(|g| back.fresh_contains(g));
        from_gens && from_basis
    }

    // membership by a freshly computed basis, bypassing the cache
    fn fresh_contains(&self, f: &Polynomial) -> bool {
        match self.compute_basis(self.ctx.order, None) {
            Ok(gb) => gb.reduce(f).is_zero(),
            Err(_) => false,
        }
    }
}

/// `f ∈ I`
pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.try_contains(f)
}

/// `J ⊆ I`
pub fn ideal_contains(ideal: &Ideal, sub: &Ideal) -> Result<bool> {
    ideal.ctx.check(&sub.ctx)?;
    Ok(ideal.contains_ideal(sub))
}

impl Ideal {
    /// Ideal generated by `gens`, taking the context from the first generator.
    pub fn from_generators(gens: Vec<Polynomial>) -> Result<Ideal> {
        let ctx = gens
            .first()
            .map(|g| g.ctx())
            .ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
        Ideal::new(ctx, gens)
    }
}
