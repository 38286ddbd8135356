use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyarith::{parse_polynomial, MonomialOrder, PolyContext, Polynomial, PrimeField};

/// Ring-theoretic hypotheses that cannot be decided here and are taken on trust.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    pub cohen_macaulay: bool,
    pub f_injective: bool,
    pub equidimensional: bool,
    pub param_frobenius_closed: bool,
}

impl Assumptions {
    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.cohen_macaulay {
            v.push("cohen_macaulay");
        }
        if self.f_injective {
            v.push("f_injective");
        }
        if self.equidimensional {
            v.push("equidimensional");
        }
        if self.param_frobenius_closed {
            v.push("param_frobenius_closed");
        }
        v
    }
}

/// `R = F_p[x_1..x_n] / J` with a positive grading; `J` is homogeneous.
/// Local questions at `m = (x_1..x_n)` are answered on this graded ring.
#[derive(Clone)]
pub struct QuotientRing {
    vars: Vec<String>,
    weights: Vec<u32>,
    defining: Ideal,
    assumptions: Assumptions,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl QuotientRing {
    pub fn polynomial_ring(p: u64, vars: &[&str]) -> Result<Self> {
        Self::new(p, vars, &[])
    }

    /// Ring with defining relations given as text, standard grading.
    pub fn new(p: u64, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let ctx = PolyContext::new(vars.len(), field, MonomialOrder::Grevlex);
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, vars, ctx))
            .collect::<Result<Vec<_>>>()?;
        Self::from_polynomials(field, vars, vec![1; vars.len()], rels)
    }

    pub fn from_polynomials(
        field: PrimeField,
        vars: &[&str],
        weights: Vec<u32>,
        relations: Vec<Polynomial>,
    ) -> Result<Self> {
        if weights.len() != vars.len() {
            return Err(Error::ArityMismatch {
                left: weights.len(),
                right: vars.len(),
            });
        }
        if weights.contains(&0) {
            return Err(Error::InvalidArgument("grading weights must be positive".into()));
        }
        let ctx = PolyContext::new(vars.len(), field, MonomialOrder::Grevlex);
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        for r in &relations {
            if !r.is_homogeneous(&weights) {
                return Err(Error::NonHomogeneous(r.fmt_with(&vars)));
            }
        }
        let defining = Ideal::new(ctx, relations)?;
        Ok(Self {
            vars,
            weights,
            defining,
            assumptions: Assumptions::default(),
        })
    }

    pub fn with_assumptions(mut self, assumptions: Assumptions) -> Self {
        self.assumptions = assumptions;
        self
    }

    pub fn assumptions(&self) -> Assumptions {
        self.assumptions
    }

    pub fn ctx(&self) -> PolyContext {
        self.defining.ctx()
    }

    pub fn field(&self) -> PrimeField {
        self.ctx().field
    }

    pub fn characteristic(&self) -> u64 {
        self.ctx().characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining.is_zero()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.ctx(), i)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        parse_polynomial(text, &names, self.ctx())
    }

    pub fn fmt_poly(&self, f: &Polynomial) -> String {
        f.fmt_with(&self.vars)
    }

    /// The irrelevant ideal `(x_1..x_n)`.
    pub fn maximal_ideal(self: &Arc<Self>) -> RingIdeal {
        let gens = (0..self.nvars()).map(|i| self.var(i)).collect();
        RingIdeal::new(self.clone(), gens).expect("variables are homogeneous")
    }

    pub fn describe(&self) -> String {
        let mut s = format!("F_{}[{}]", self.characteristic(), self.vars.join(","));
        if !self.defining.is_zero() {
            let rels: Vec<String> = self.defining.generators().iter().map(|g| self.fmt_poly(g)).collect();
            s.push_str(&format!("/({})", rels.join(", ")));
        }
        s
    }
}

/// An ideal of a [`QuotientRing`], held by lifts of its generators. Every question
/// is answered on the ambient ideal `I + J`.
#[derive(Clone)]
pub struct RingIdeal {
    ring: Arc<QuotientRing>,
    gens: Vec<Polynomial>,
    ambient: OnceLock<Arc<Ideal>>,
}

impl fmt::Debug for RingIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl RingIdeal {
    /// Generators must be homogeneous for the ring's grading; zeros are dropped.
    pub fn new(ring: Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let ctx = ring.ctx();
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            ctx.check(&g.ctx().with_order(ctx.order))?;
            let g = g.with_order(ctx.order);
            if !g.is_homogeneous(ring.weights()) {
                return Err(Error::NonHomogeneous(ring.fmt_poly(&g)));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Self {
            ring,
            gens: kept,
            ambient: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Arc<QuotientRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring.clone(), polys)
    }

    pub fn zero(ring: Arc<QuotientRing>) -> Self {
        Self {
            ring,
            gens: Vec::new(),
            ambient: OnceLock::new(),
        }
    }

    pub fn unit(ring: Arc<QuotientRing>) -> Self {
        let one = Polynomial::one(ring.ctx());
        Self::new(ring, vec![one]).expect("constants are homogeneous")
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// `I + J` in the polynomial ring.
    pub fn ambient(&self) -> &Arc<Ideal> {
        self.ambient.get_or_init(|| {
            let gens = self.gens.iter().chain(self.ring.defining_ideal().generators()).cloned();
            Arc::new(Ideal::new(self.ring.ctx(), gens).expect("generators share the ring context"))
        })
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.ambient().contains(f)
    }

    pub fn contains_ideal(&self, other: &RingIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &RingIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Whether the ideal is zero in `R`, i.e. every generator lies in `J`.
    pub fn is_zero_in_ring(&self) -> bool {
        self.gens.iter().all(|g| self.ring.defining_ideal().contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.ambient().is_unit()
    }

    /// Normal form modulo `I + J`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.ambient().reduce(f)
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    /// Smallest degree of a generator that is nonzero in `R`.
    pub fn min_degree(&self) -> Option<u64> {
        self.gens
            .iter()
            .filter(|g| !self.ring.defining_ideal().contains(g))
            .filter_map(|g| g.homogeneous_degree(self.ring.weights()))
            .min()
    }

    pub fn sum(&self, other: &RingIdeal) -> RingIdeal {
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        RingIdeal::new(self.ring.clone(), gens).expect("same ring")
    }

    pub fn product(&self, other: &RingIdeal) -> RingIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        dedup(&mut gens);
        RingIdeal::new(self.ring.clone(), gens).expect("products of homogeneous are homogeneous")
    }

    pub fn describe(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|g| self.ring.fmt_poly(g)).collect();
        format!("({})", g.join(", "))
    }
}

pub(crate) fn dedup(gens: &mut Vec<Polynomial>) {
    let mut seen = std::collections::HashSet::new();
    gens.retain(|g| seen.insert(g.monic()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_homogeneous() {
        assert!(matches!(
            QuotientRing::new(7, &["x", "y"], &["x^2 + y"]),
            Err(Error::NonHomogeneous(_))
        ));
        let r = Arc::new(QuotientRing::polynomial_ring(7, &["x", "y"]).unwrap());
        assert!(matches!(
            RingIdeal::parse(&r, &["x + 1"]),
            Err(Error::NonHomogeneous(_))
        ));
        assert!(matches!(QuotientRing::new(4, &["x"], &[]), Err(Error::NotPrime(4))));
    }

    #[test]
    fn weighted_grading() {
        let field = PrimeField::new(5).unwrap();
        let ctx = PolyContext::new(2, field, MonomialOrder::Grevlex);
        let rel = parse_polynomial("x^2 - y", &["x", "y"], ctx).unwrap();
        let r = QuotientRing::from_polynomials(field, &["x", "y"], vec![1, 2], vec![rel]).unwrap();
        assert_eq!(r.describe(), "F_5[x,y]/(x^2 + 4*y)");
    }

    #[test]
    fn membership_through_lift() {
        let r = Arc::new(QuotientRing::new(7, &["x", "y", "z"], &["x^3 + y^3 + z^3"]).unwrap());
        let i = RingIdeal::parse(&r, &["x", "y"]).unwrap();
        assert!(i.contains(&r.parse("z^3").unwrap()));
        assert!(!i.contains(&r.parse("z^2").unwrap()));
        assert!(!i.is_zero_in_ring());
        let zero = RingIdeal::parse(&r, &["x^3 + y^3 + z^3"]).unwrap();
        assert!(zero.is_zero_in_ring());
    }
}
