use std::sync::Arc;

use super::ring::{dedup, QuotientRing, RingIdeal};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyarith::{Monomial, MonomialOrder, Polynomial};

/// `I^n`, generated by the products over all size-`n` multisets of generators.
pub fn ideal_power(ideal: &RingIdeal, n: u32) -> Result<RingIdeal> {
    if n == 0 {
        return Err(Error::InvalidArgument("ideal_power needs n >= 1".into()));
    }
    let gens = ideal.generators();
    let mut out = Vec::new();
    fn rec(gens: &[Polynomial], start: usize, left: u32, acc: &Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for k in start..gens.len() {
            rec(gens, k, left - 1, &(acc * &gens[k]), out);
        }
    }
    rec(gens, 0, n, &Polynomial::one(ideal.ring().ctx()), &mut out);
    dedup(&mut out);
    RingIdeal::new(ideal.ring().clone(), out)
}

/// `I^[p^e]`, generated by the `p^e`-th powers of the given generators.
pub fn bracket_power(ideal: &RingIdeal, e: u32) -> Result<RingIdeal> {
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.frobenius_power(e))
        .collect::<Result<Vec<_>>>()?;
    RingIdeal::new(ideal.ring().clone(), gens)
}

/// Intersection of two ideals of one polynomial ring: eliminate `t` from
/// `t*A + (1-t)*B`.
pub fn intersect_ambient(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    let ctx = a.ctx();
    ctx.check(&b.ctx())?;
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ctx));
    }
    let order = MonomialOrder::BlockElimination(1);
    let t = Polynomial::var(ctx.with_nvars(ctx.nvars + 1).with_order(order), 0);
    let one_minus_t = &Polynomial::one(t.ctx()) - &t;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(&t * &g.pad(1, 0, order));
    }
    for g in b.generators() {
        gens.push(&one_minus_t * &g.pad(1, 0, order));
    }
    let lifted = Ideal::new(t.ctx(), gens)?;
    let mut out = eliminate(&lifted, 1)?;
    if out.ctx().order != ctx.order {
        out = Ideal::new(ctx, out.generators().iter().map(|g| g.with_order(ctx.order)))?;
    }
    Ok(out)
}

/// `I ∩ K` in the quotient ring.
pub fn intersect(i: &RingIdeal, k: &RingIdeal) -> Result<RingIdeal> {
    same_ring(i, k)?;
    let inter = intersect_ambient(i.ambient(), k.ambient())?;
    RingIdeal::new(i.ring().clone(), inter.generators().to_vec())
}

/// Generators of `I ∩ F_p[x_{k+1}..x_n]`, returned in the ring of the remaining
/// variables under grevlex.
pub fn eliminate(ideal: &Ideal, k: usize) -> Result<Ideal> {
    let ctx = ideal.ctx();
    if k == 0 {
        return Ok(ideal.clone());
    }
    if k > ctx.nvars {
        return Err(Error::InvalidArgument(format!(
            "cannot eliminate {k} of {} variables",
            ctx.nvars
        )));
    }
    let back = ctx.with_nvars(ctx.nvars - k).with_order(MonomialOrder::Grevlex);
    if ideal.is_zero() {
        return Ok(Ideal::zero(back));
    }
    let gb = ideal.basis_in(MonomialOrder::BlockElimination(k));
    let kept = gb
        .generators()
        .iter()
        .filter(|g| !g.involves_front(k))
        .map(|g| g.drop_front(k, MonomialOrder::Grevlex));
    Ideal::new(back, kept)
}

/// Outcome of a colon computation.
#[derive(Debug, Clone)]
pub struct Colon {
    pub ideal: RingIdeal,
    /// Set when the divisor ideal is zero in the ring, so the colon is the unit ideal.
    pub divisor_was_zero: bool,
}

/// `(I : K) = { r : r*K ⊆ I }` in the quotient ring.
pub fn colon(i: &RingIdeal, k: &RingIdeal) -> Result<Colon> {
    same_ring(i, k)?;
    let ring = i.ring().clone();
    let ambient = i.ambient();
    let divisors: Vec<&Polynomial> = k
        .generators()
        .iter()
        .filter(|g| !ring.defining_ideal().contains(g))
        .collect();
    if divisors.is_empty() {
        return Ok(Colon {
            ideal: RingIdeal::unit(ring),
            divisor_was_zero: true,
        });
    }
    let mut acc: Option<Ideal> = None;
    for f in divisors {
        let part = colon_by_element(ambient, f)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect_ambient(&prev, &part)?,
        });
    }
    let gens = acc.unwrap().generators().to_vec();
    Ok(Colon {
        ideal: RingIdeal::new(ring, gens)?,
        divisor_was_zero: false,
    })
}

/// `(A : f) = (A ∩ (f)) / f` in the polynomial ring.
pub fn colon_by_element(a: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ctx = a.ctx();
    let f = f.with_order(ctx.order);
    if f.is_zero() {
        return Ideal::new(ctx, [Polynomial::one(ctx)]);
    }
    let principal = Ideal::new(ctx, [f.clone()])?;
    let inter = intersect_ambient(a, &principal)?;
    let quotients = inter
        .generators()
        .iter()
        .map(|g| {
            g.exact_div(&f)
                .ok_or_else(|| Error::InvalidArgument("intersection generator not divisible by f".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ctx, quotients)
}

/// Dimension of `S / A` as the largest set of variables that supports no leading
/// monomial of a Groebner basis of `A`.
pub fn quotient_dimension(a: &Ideal) -> Result<usize> {
    let n = a.ctx().nvars;
    assert!(n <= 64, "dimension search supports at most 64 variables");
    let gb = a.basis();
    if gb.is_unit() {
        return Err(Error::ZeroRing);
    }
    let supports: Vec<u64> = gb
        .leading_monomials()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    Ok(max_independent_set(n, &supports))
}

/// Largest subset of `0..n` (as a bitmask) that contains none of `supports`.
pub(crate) fn max_independent_set(n: usize, supports: &[u64]) -> usize {
    fn rec(i: usize, n: usize, set: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = set | (1 << i);
        if !supports.iter().any(|&s| s & !with == 0) {
            rec(i + 1, n, with, size + 1, supports, best);
        }
        rec(i + 1, n, set, size, supports, best);
    }
    let mut best = 0;
    rec(0, n, 0, 0, supports, &mut best);
    best
}

/// Krull dimension of the ring.
pub fn krull_dim(ring: &QuotientRing) -> Result<usize> {
    quotient_dimension(ring.defining_ideal())
}

/// `dim R - dim R/I`, which is the height under the equidimensional and catenary
/// hypothesis. Refuses unless that hypothesis (or Cohen-Macaulayness) is asserted.
pub fn height(ideal: &RingIdeal) -> Result<usize> {
    let a = ideal.ring().assumptions();
    if !(a.equidimensional || a.cohen_macaulay) {
        return Err(Error::MissingAssumption(
            "height needs the ring asserted equidimensional".into(),
        ));
    }
    let dim_r = krull_dim(ideal.ring())?;
    if ideal.is_unit() {
        return Err(Error::InvalidArgument("height of the unit ideal".into()));
    }
    let dim_q = quotient_dimension(ideal.ambient())?;
    Ok(dim_r - dim_q)
}

/// Standard monomials of `A` with weighted degree at most `max_degree`, sorted by
/// degree and then descending in the ideal's order.
pub fn standard_monomials(a: &Ideal, weights: &[u32], max_degree: u64) -> Vec<Monomial> {
    let gb = a.basis();
    let n = a.ctx().nvars;
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(
        i: usize,
        left: u64,
        cur: &mut Vec<u32>,
        weights: &[u32],
        out: &mut Vec<Monomial>,
        keep: &dyn Fn(&Monomial) -> bool,
    ) {
        if i == cur.len() {
            let m = Monomial::from_exponents(cur);
            if keep(&m) {
                out.push(m);
            }
            return;
        }
        let w = weights[i] as u64;
        let mut e = 0u32;
        while e as u64 * w <= left {
            cur[i] = e;
            rec(i + 1, left - e as u64 * w, cur, weights, out, keep);
            e += 1;
        }
        cur[i] = 0;
    }
    let keep = |m: &Monomial| gb.is_standard(m);
    rec(0, max_degree, &mut cur, weights, &mut out, &keep);
    let order = a.ctx().order;
    out.sort_by(|x, y| {
        x.weighted_degree(weights)
            .cmp(&y.weighted_degree(weights))
            .then_with(|| order.compare(y, x))
    });
    out
}

fn same_ring(a: &RingIdeal, b: &RingIdeal) -> Result<()> {
    if Arc::ptr_eq(a.ring(), b.ring()) {
        return Ok(());
    }
    a.ring().ctx().check(&b.ring().ctx())?;
    if !a.ring().defining_ideal().same_ideal(b.ring().defining_ideal()) {
        return Err(Error::InvalidArgument("ideals live in different rings".into()));
    }
    Ok(())
}
