//! Analytic spread through the fiber cone, and reductions `J I^t = I^{t+1}`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::IdealPowers;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::{quotient_dimension, RingIdeal};
use crate::par;
use crate::polyarith::{MonomialOrder, Polynomial};

/// Fiber cone `⊕ I^j / m I^j` presented as `F_p[T_1..T_s] / fiber_ideal`.
#[derive(Clone, Debug)]
pub struct FiberConePresentation {
    pub nvars: usize,
    pub fiber_ideal: Ideal,
    /// Number of Rees-kernel generators that survived elimination of `t`.
    pub rees_kernel_size: usize,
}

impl FiberConePresentation {
    pub fn dimension(&self) -> Result<usize> {
        if self.nvars == 0 {
            return Ok(0);
        }
        quotient_dimension(&self.fiber_ideal)
    }
}

/// Builds the Rees kernel in variables `[t, x.., T..]` from `J` and `T_i - t g_i`,
/// eliminates `t`, and sets every `x` to zero. `max_pairs` bounds the Groebner
/// computation.
pub fn fiber_cone(ideal: &RingIdeal, max_pairs: Option<usize>) -> Result<FiberConePresentation> {
    let ring = ideal.ring();
    let ctx = ring.ctx();
    let n = ctx.nvars;
    let gens: Vec<&Polynomial> = ideal
        .generators()
        .iter()
        .filter(|g| !ring.defining_ideal().contains(g))
        .collect();
    let s = gens.len();
    let t_ctx = ctx.with_nvars(s).with_order(MonomialOrder::Grevlex);
    if s == 0 {
        return Ok(FiberConePresentation {
            nvars: 0,
            fiber_ideal: Ideal::zero(t_ctx),
            rees_kernel_size: 0,
        });
    }
    let order = MonomialOrder::BlockElimination(1);
    let big = ctx.with_nvars(1 + n + s).with_order(order);
    let t = Polynomial::var(big, 0);
    let mut rees = Vec::new();
    for j in ring.defining_ideal().generators() {
        rees.push(j.pad(1, s, order));
    }
    for (i, g) in gens.iter().enumerate() {
        let ti = Polynomial::var(big, 1 + n + i);
        rees.push(&ti - &(&t * &g.pad(1, s, order)));
    }
    let rees = Ideal::new(big, rees)?;
    let gb = match max_pairs {
        Some(b) => rees.try_basis_in(order, b)?,
        None => rees.basis_in(order),
    };
    let kernel: Vec<&Polynomial> = gb.generators().iter().filter(|g| !g.involves_front(1)).collect();
    let mut mask = vec![false; 1 + n + s];
    for m in mask.iter_mut().take(1 + n) {
        *m = true;
    }
    let fiber = kernel
        .iter()
        .map(|g| g.set_zero(&mask).drop_front(1 + n, MonomialOrder::Grevlex))
        .filter(|g| !g.is_zero());
    Ok(FiberConePresentation {
        nvars: s,
        fiber_ideal: Ideal::new(t_ctx, fiber)?,
        rees_kernel_size: kernel.len(),
    })
}

/// `ℓ(I)`, the Krull dimension of the fiber cone.
pub fn analytic_spread(ideal: &RingIdeal) -> Result<usize> {
    fiber_cone(ideal, None)?.dimension()
}

/// [`analytic_spread`] with a bound on processed S-pairs.
pub fn analytic_spread_with_budget(ideal: &RingIdeal, max_pairs: usize) -> Result<usize> {
    fiber_cone(ideal, Some(max_pairs))?.dimension()
}

/// Smallest `t ≤ t_max` with `J I^t = I^{t+1}`; `None` is inconclusive.
pub fn verify_reduction(jr: &RingIdeal, ideal: &RingIdeal, t_max: u32) -> Result<Option<u32>> {
    verify_reduction_in(jr, &IdealPowers::new(ideal.clone()), t_max)
}

fn verify_reduction_in(jr: &RingIdeal, powers: &IdealPowers, t_max: u32) -> Result<Option<u32>> {
    let ideal = powers.base();
    if !ideal.contains_ideal(jr) {
        return Err(Error::NotContained("the candidate reduction is not inside I".into()));
    }
    for t in 0..=t_max {
        let lhs = if t == 0 {
            jr.clone()
        } else {
            jr.product(&powers.get(t)?)
        };
        if lhs.contains_ideal(&powers.get(t + 1)?) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// A reduction found by [`random_minimal_reduction`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub ideal: RingIdeal,
    pub t: u32,
    pub trial: usize,
}

/// Draws `target` random combinations of generators of one degree each, and keeps
/// the lowest-indexed trial that is a reduction within `t_max`.
pub fn random_minimal_reduction(
    ideal: &RingIdeal,
    target: usize,
    seed: u64,
    trials: usize,
    t_max: u32,
) -> Result<Option<Reduction>> {
    let powers = IdealPowers::new(ideal.clone());
    if ideal.generators().len() <= target {
        return Ok(verify_reduction_in(ideal, &powers, t_max)?.map(|t| Reduction {
            ideal: ideal.clone(),
            t,
            trial: 0,
        }));
    }
    let ring = ideal.ring();
    let p = ring.characteristic();
    let mut blocks: BTreeMap<u64, Vec<&Polynomial>> = BTreeMap::new();
    for g in ideal.generators() {
        let d = g.homogeneous_degree(ring.weights()).expect("homogeneous generator");
        blocks.entry(d).or_default().push(g);
    }
    let blocks: Vec<Vec<&Polynomial>> = blocks.into_values().collect();
    let draw = |trial: usize| -> Result<RingIdeal> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut elems = Vec::with_capacity(target);
        for _ in 0..target {
            let block = &blocks[rng.gen_range(0..blocks.len())];
            let mut f = Polynomial::zero(ring.ctx());
            for g in block {
                f = &f + &g.scale(rng.gen_range(0..p));
            }
            elems.push(f);
        }
        RingIdeal::new(ring.clone(), elems)
    };
    // warm the cache so trials share the powers
    for t in 1..=t_max + 1 {
        powers.get(t)?.ambient().basis();
    }
    let indices: Vec<usize> = (0..trials).collect();
    let found = par::find_first(&indices, |&trial| {
        let jr = draw(trial).ok()?;
        let t = verify_reduction_in(&jr, &powers, t_max).ok()??;
        Some((jr, t))
    });
    Ok(found.map(|(trial, (ideal, t))| Reduction { ideal, t, trial }))
}
