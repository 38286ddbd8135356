use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, MonomialOrder, PrimeField};
use crate::error::{Error, Result};

/// Ambient data shared by every polynomial of one computation: variable count,
/// coefficient field and the order that fixes the canonical term sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyContext {
    pub nvars: usize,
    pub field: PrimeField,
    pub order: MonomialOrder,
}

impl PolyContext {
    pub fn new(nvars: usize, field: PrimeField, order: MonomialOrder) -> Self {
        Self { nvars, field, order }
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn with_order(self, order: MonomialOrder) -> Self {
        Self { order, ..self }
    }

    pub fn with_nvars(self, nvars: usize) -> Self {
        Self { nvars, ..self }
    }

    pub(crate) fn check(&self, other: &PolyContext) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(Error::CharacteristicMismatch {
                left: self.characteristic(),
                right: other.characteristic(),
            });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order.to_string(),
                right: other.order.to_string(),
            });
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over `F_p`. Terms are kept sorted strictly
/// descending under the context order, with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ctx: PolyContext,
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(ctx: PolyContext) -> Self {
        Self { ctx, terms: Vec::new() }
    }

    pub fn constant(ctx: PolyContext, c: u64) -> Self {
        Self::term(ctx, Monomial::one(ctx.nvars), c)
    }

    pub fn one(ctx: PolyContext) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn var(ctx: PolyContext, i: usize) -> Self {
        assert!(i < ctx.nvars, "variable index {i} out of range");
        Self::term(ctx, Monomial::var(ctx.nvars, i), 1)
    }

    pub fn term(ctx: PolyContext, mono: Monomial, c: u64) -> Self {
        assert_eq!(mono.nvars(), ctx.nvars);
        let c = ctx.field.reduce(c);
        if c == 0 {
            Self::zero(ctx)
        } else {
            Self {
                ctx,
                terms: vec![(mono, c)],
            }
        }
    }

    /// Collects arbitrary terms, summing duplicates and dropping zeros.
    pub fn from_terms(ctx: PolyContext, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ctx.nvars);
            let e = acc.entry(m).or_insert(0);
            *e = ctx.field.add(*e, ctx.field.reduce(c));
        }
        Self::from_map(ctx, acc)
    }

    /// Trusts the caller that `terms` is strictly descending and zero-free.
    pub(crate) fn from_sorted_terms(ctx: PolyContext, terms: Vec<(Monomial, u64)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ctx.order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Self { ctx, terms }
    }

    fn from_map(ctx: PolyContext, acc: HashMap<Monomial, u64>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = ctx.order;
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Self { ctx, terms }
    }

    #[inline]
    pub fn ctx(&self) -> PolyContext {
        self.ctx
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.ctx.nvars
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.ctx.field
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.ctx.order
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending order.
    #[inline]
    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.terms.first().map(|(_, c)| *c)
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| *c).unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree of every term when all terms share one weighted degree.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.is_zero() || self.homogeneous_degree(weights).is_some()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        Ok(self.merge(other, 1, None))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let m1 = self.ctx.field.neg(1);
        Ok(self.merge(other, m1, None))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        self.mul_checked(other)
    }

    fn mul_checked(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ctx));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term_checked(m, *c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term_checked(m, *c);
        }
        let f = self.ctx.field;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.checked_mul(mb)?).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Self::from_map(self.ctx, acc))
    }

    fn mul_term_checked(&self, m: &Monomial, c: u64) -> Result<Self> {
        let f = self.ctx.field;
        let c = f.reduce(c);
        if c == 0 {
            return Ok(Self::zero(self.ctx));
        }
        // multiplication by a monomial preserves the order of terms
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| Ok((t.checked_mul(m)?, f.mul(*d, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ctx: self.ctx, terms })
    }

    /// `c * m * self`; panics on exponent overflow.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Self {
        self.mul_term_checked(m, c).expect("monomial exponent overflow")
    }

    pub fn scale(&self, c: u64) -> Self {
        self.mul_term(&Monomial::one(self.nvars()), c)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ctx.field.inv(c)),
        }
    }

    /// `self + factor * other` in a single merge pass. When `shift` is given the
    /// terms of `other` are first multiplied by that monomial.
    fn merge(&self, other: &Self, factor: u64, shift: Option<&Monomial>) -> Self {
        let f = self.ctx.field;
        let order = self.ctx.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let shifted = other.terms.iter().map(|(m, c)| {
            let m = match shift {
                Some(s) => m.mul(s),
                None => m.clone(),
            };
            (m, f.mul(*c, factor))
        });
        let mut b = shifted.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.compare(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let t = b.next().unwrap();
                    if t.1 != 0 {
                        out.push(t);
                    }
                }
                Ordering::Equal => {
                    let (m, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let c = f.add(*c1, c2);
                    if c != 0 {
                        out.push((m.clone(), c));
                    }
                }
            }
        }
        Self {
            ctx: self.ctx,
            terms: out,
        }
    }

    /// `self - c * m * g`, the reduction step of multivariate division.
    pub(crate) fn sub_mul_term(&self, c: u64, m: &Monomial, g: &Self) -> Self {
        let f = self.ctx.field;
        self.merge(g, f.neg(c), Some(m))
    }

    /// Drops the leading term.
    pub(crate) fn tail(&self) -> Self {
        Self {
            ctx: self.ctx,
            terms: self.terms[1..].to_vec(),
        }
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut acc = Self::one(self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_checked(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_checked(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^(p^e)`, computed termwise since Frobenius is additive in characteristic p.
    pub fn frobenius_power(&self, e: u32) -> Result<Self> {
        let p = self.ctx.characteristic();
        let q = p.checked_pow(e).ok_or(Error::ExponentOverflow)?;
        let f = self.ctx.field;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.checked_pow(q)?, f.pow(*c, q as u128))))
            .collect::<Result<Vec<_>>>()?;
        // raising exponents to a common power preserves any monomial order
        Ok(Self { ctx: self.ctx, terms })
    }

    /// Re-sorts under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.ctx.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Self {
            ctx: self.ctx.with_order(order),
            terms,
        }
    }

    /// Embeds into the ring with `front` new leading and `back` new trailing variables.
    pub fn pad(&self, front: usize, back: usize, order: MonomialOrder) -> Self {
        let ctx = PolyContext::new(self.nvars() + front + back, self.field(), order);
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.pad(front, back), *c)).collect();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Self { ctx, terms }
    }

    /// Removes the first `k` variables, which must not occur.
    pub fn drop_front(&self, k: usize, order: MonomialOrder) -> Self {
        let ctx = PolyContext::new(self.nvars() - k, self.field(), order);
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(m.exponents()[..k].iter().all(|&e| e == 0));
                (m.drop_front(k), *c)
            })
            .collect();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Self { ctx, terms }
    }

    /// Whether any of the first `k` variables occurs.
    pub fn involves_front(&self, k: usize) -> bool {
        self.terms
            .iter()
            .any(|(m, _)| m.exponents()[..k].iter().any(|&e| e > 0))
    }

    /// Sets the variables flagged in `mask` to zero.
    pub fn set_zero(&self, mask: &[bool]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.support().all(|i| !mask[i]))
            .cloned()
            .collect();
        Self { ctx: self.ctx, terms }
    }

    /// Exact quotient by a nonzero divisor, `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = (divisor.leading_monomial()?, divisor.leading_coeff()?);
        let inv = self.ctx.field.inv(lc);
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            let q = m.div(lm)?;
            let qc = self.ctx.field.mul(c, inv);
            rest = rest.sub_mul_term(qc, &q, divisor);
            quotient.push((q, qc));
        }
        Some(Self {
            ctx: self.ctx,
            terms: quotient,
        })
    }

    pub fn fmt_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            match (m.is_one(), *c) {
                (true, c) => s.push_str(&c.to_string()),
                (false, 1) => s.push_str(&m.fmt_with(names)),
                (false, c) => {
                    s.push_str(&c.to_string());
                    s.push('*');
                    s.push_str(&m.fmt_with(names));
                }
            }
        }
        s
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Operator forms panic on context mismatch; use the `try_*` methods to handle it.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ctx.field.neg(1))
    }
}

/// `f * g`, failing on arity or characteristic mismatch.
pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.try_mul(g)
}

/// `f^(p^e)`.
pub fn frobenius_power(f: &Polynomial, e: u32) -> Result<Polynomial> {
    f.frobenius_power(e)
}
