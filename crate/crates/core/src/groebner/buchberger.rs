use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::polyarith::{Monomial, MonomialOrder, PolyContext, Polynomial};

/// A Groebner basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ctx: PolyContext,
    polys: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ctx(&self) -> PolyContext {
        self.ctx
    }

    pub fn order(&self) -> MonomialOrder {
        self.ctx.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Whether the basis contains a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.polys.iter().filter_map(|g| g.leading_monomial())
    }

    /// Remainder of `f` on division by the basis; `f` must share the basis context.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        debug_assert_eq!(f.ctx(), self.ctx);
        reduce_full(f, self.polys.iter())
    }

    /// A monomial is standard when no leading monomial of the basis divides it.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().any(|lm| lm.divides(m))
    }
}

/// Full multivariate division remainder of `f` by `basis`.
pub(crate) fn reduce_full<'a>(f: &Polynomial, basis: impl Iterator<Item = &'a Polynomial> + Clone) -> Polynomial {
    let field = f.field();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, u64)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        let divisor = basis
            .clone()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let q = m.div(lm).unwrap();
                let coef = match g.leading_coeff().unwrap() {
                    1 => c,
                    lc => field.mul(c, field.inv(lc)),
                };
                p = p.sub_mul_term(coef, &q, g);
            }
            None => {
                rem.push((m, c));
                p = p.tail();
            }
        }
    }
    // remainder terms were produced in descending order
    Polynomial::from_sorted_terms(f.ctx(), rem)
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let field = f.field();
    let a = f.mul_term(&l.div(lf).unwrap(), field.inv(f.leading_coeff().unwrap()));
    let b = g.mul_term(&l.div(lg).unwrap(), field.inv(g.leading_coeff().unwrap()));
    &a - &b
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl Pair {
    /// Normal selection strategy: smallest lcm degree, ties by lexicographic lcm.
    fn key(&self) -> (u64, &[u32], usize, usize) {
        (self.lcm.degree(), self.lcm.exponents(), self.i, self.j)
    }
}

/// Gebauer-Moeller installation of a new basis element `h`. Applies the coprime
/// leading-term criterion and the chain criterion.
fn update(polys: &[Polynomial], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = polys[h].leading_monomial().unwrap().clone();
    let lm = |k: usize| polys[k].leading_monomial().unwrap();

    let mut cands: VecDeque<(usize, Monomial)> = active.iter().map(|&g| (g, lh.lcm(lm(g)))).collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g1, l1)) = cands.pop_front() {
        let coprime = lh.is_coprime(lm(g1));
        if coprime || (!cands.iter().any(|(_, l2)| l2.divides(&l1)) && !kept.iter().any(|(_, l2)| l2.divides(&l1))) {
            kept.push((g1, l1));
        }
    }
    let fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|(g, _)| !lh.is_coprime(lm(*g)))
        .map(|(g, lcm)| Pair { i: g, j: h, lcm })
        .collect();

    pairs.retain(|p| !(lh.divides(&p.lcm) && lm(p.i).lcm(&lh) != p.lcm && lh.lcm(lm(p.j)) != p.lcm));
    pairs.extend(fresh);

    active.retain(|&g| !lh.divides(lm(g)));
    active.push(h);
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
/// Zero generators are dropped; the output is monic and sorted by leading
/// monomial, descending.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(gens, order, None)
}

/// As [`buchberger`], giving up with [`Error::BudgetExceeded`] after `max_pairs`
/// S-pair reductions.
pub fn buchberger_with_budget(
    gens: &[Polynomial],
    order: MonomialOrder,
    max_pairs: Option<usize>,
) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidArgument(
            "no generators: the ambient context is unknown".into(),
        ));
    };
    let ctx = first.ctx().with_order(order);
    for g in gens {
        let gc = g.ctx().with_order(order);
        ctx.check(&gc)?;
    }
    let input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).monic())
        .collect();

    if input.iter().all(|g| g.is_monomial()) {
        return Ok(monomial_basis(ctx, input));
    }

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for f in input {
        let h = reduce_full(&f, active.iter().map(|&k| &polys[k]));
        if h.is_zero() {
            continue;
        }
        polys.push(h.monic());
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].key().cmp(&pairs[b].key()))
            .unwrap();
        let pair = pairs.swap_remove(best);
        processed += 1;
        if let Some(limit) = max_pairs {
            if processed > limit {
                return Err(Error::BudgetExceeded(format!("more than {limit} S-pair reductions")));
            }
        }
        let s = s_polynomial(&polys[pair.i], &polys[pair.j]);
        let h = reduce_full(&s, active.iter().map(|&k| &polys[k]));
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(GroebnerBasis {
                ctx,
                polys: vec![Polynomial::one(ctx)],
                reduced: true,
            });
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    let minimal: Vec<Polynomial> = active.iter().map(|&k| polys[k].clone()).collect();
    Ok(interreduce(ctx, minimal))
}

/// Tail-reduces a minimal basis and sorts it.
fn interreduce(ctx: PolyContext, minimal: Vec<Polynomial>) -> GroebnerBasis {
    let mut out: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others = minimal.iter().enumerate().filter(move |(i, _)| *i != k).map(|(_, p)| p);
        let lt = Polynomial::from_sorted_terms(ctx, vec![g.terms()[0].clone()]);
        let tail = reduce_full(&g.tail(), others);
        out.push((&lt + &tail).monic());
    }
    let order = ctx.order;
    out.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    GroebnerBasis {
        ctx,
        polys: out,
        reduced: true,
    }
}

/// Minimal generators of a monomial ideal form its reduced basis.
fn monomial_basis(ctx: PolyContext, input: Vec<Polynomial>) -> GroebnerBasis {
    let mut mons: Vec<Monomial> = input.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    mons.sort_by_key(|m| (m.degree(), m.exponents().to_vec()));
    mons.dedup();
    let mut minimal: Vec<Monomial> = Vec::new();
    for m in mons {
        if !minimal.iter().any(|d| d.divides(&m)) {
            minimal.push(m);
        }
    }
    let order = ctx.order;
    minimal.sort_by(|a, b| order.compare(b, a));
    GroebnerBasis {
        ctx,
        polys: minimal.into_iter().map(|m| Polynomial::term(ctx, m, 1)).collect(),
        reduced: true,
    }
}

/// Remainder of `f` modulo `basis`, failing when the contexts disagree.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    f.ctx().check(&basis.ctx)?;
    Ok(basis.reduce(f))
}
