//! Randomized hunt for instances of the open questions: are powers of closed
//! parameter ideals closed, and does `closure(I^{2ℓ-h+n}) ⊆ I^n` or
//! `closure(I^{dim R+n}) ⊆ I^n` hold without F-purity? Anything found is only a
//! candidate: the ring hypotheses of the questions are not verified.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::containment::containment_with;
use super::{CheckOptions, Verdict};
use crate::closure::IdealPowers;
use crate::error::Result;
use crate::frobenius::{powers_closed_scan, ScanOptions};
use crate::ideal_ops::{height, krull_dim, Assumptions, QuotientRing, RingIdeal};
use crate::par;
use crate::polyarith::{monomials_of_degree, PolyContext, Polynomial};
use crate::spread::analytic_spread_with_budget;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

/// A non-conclusive observation from [`search_counterexamples`].
#[derive(Clone, Debug, Serialize)]
pub struct SearchCandidate {
    pub trial: usize,
    pub ring: String,
    pub ideal: String,
    pub question: String,
    pub detail: String,
    pub conclusive: bool,
}

fn random_form(ctx: PolyContext, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = ctx.characteristic();
    Polynomial::from_terms(
        ctx,
        monomials_of_degree(ctx.nvars, d)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..p))),
    )
}

fn trial(t: usize, seed: u64, opts: &CheckOptions) -> Result<Vec<SearchCandidate>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    let base = QuotientRing::polynomial_ring(p, &["x", "y", "z"])?;
    let mut f = random_form(base.ctx(), 3, &mut rng);
    while f.is_zero() {
        f = random_form(base.ctx(), 3, &mut rng);
    }
    let ring = Arc::new(
        QuotientRing::from_polynomials(base.field(), &["x", "y", "z"], vec![1; 3], vec![f])?.with_assumptions(
            Assumptions {
                equidimensional: true,
                ..Default::default()
            },
        ),
    );
    let gens = (0..2).map(|_| random_form(ring.ctx(), 1, &mut rng)).collect();
    let ideal = RingIdeal::new(ring.clone(), gens)?;
    if ideal.is_zero_in_ring() || ideal.is_unit() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut note = |question: &str, detail: String| {
        out.push(SearchCandidate {
            trial: t,
            ring: ring.describe(),
            ideal: ideal.describe(),
            question: question.into(),
            detail,
            conclusive: false,
        })
    };
    let scan = ScanOptions {
        degree_bound: opts.degree_bound,
        e_max: opts.e_max,
        samples: opts.samples,
        seed: opts.seed,
    };
    let scans = powers_closed_scan(&ideal, 2, &scan)?;
    if scans[0].witnesses.is_empty() && !scans[1].witnesses.is_empty() {
        note(
            "powers of a Frobenius-closed parameter ideal",
            format!("I scanned closed, I^2 has {} witnesses", scans[1].witnesses.len()),
        );
    }
    let h = height(&ideal)? as u32;
    let d = krull_dim(&ring)? as u32;
    let Ok(l) = analytic_spread_with_budget(&ideal, opts.spread_budget) else {
        return Ok(out);
    };
    let powers = IdealPowers::new(ideal.clone());
    let mut seen = Vec::new();
    for n in 1..=2u32 {
        for (label, k) in [
            ("2*spread-height+n", (2 * l as u32 + n).saturating_sub(h).max(1)),
            ("dim+n", d + n),
        ] {
            if seen.contains(&(k, n)) {
                continue;
            }
            seen.push((k, n));
            let inst = containment_with(&powers, k, n, opts)?;
            if inst.verdict == Verdict::Refuted {
                let w = inst.witness.map(|w| w.element).unwrap_or_default();
                note(label, format!("closure(I^{k}) not inside I^{n}: witness {w}"));
            }
        }
    }
    Ok(out)
}

/// Runs `trials` random cubic surfaces with ideals of two linear forms and returns
/// every candidate, in trial order. Trials that error are skipped.
pub fn search_counterexamples(trials: usize, seed: u64, opts: &CheckOptions) -> Vec<SearchCandidate> {
    let idx: Vec<usize> = (0..trials).collect();
    par::map(&idx, |&t| trial(t, seed, opts).unwrap_or_default())
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_is_deterministic() {
        let opts = CheckOptions {
            degree_bound: 3,
            m_max: 2,
            e_max: 1,
            samples: 5,
            ..Default::default()
        };
        let a = search_counterexamples(3, 9, &opts);
        let b = search_counterexamples(3, 9, &opts);
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
        assert!(a.iter().all(|c| !c.conclusive));
    }
}
