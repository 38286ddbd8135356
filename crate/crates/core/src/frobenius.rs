//! Frobenius closure in bounded form.
//!
//! `r ∈ I^F` when `r^q ∈ I^[q]` for some `q = p^e`. Only a witness is conclusive;
//! a search that stops at `e_max` says nothing about larger `e`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::groebner::Ideal;
use crate::ideal_ops::{
    bracket_power, colon_by_element, ideal_power, intersect_ambient, standard_monomials, QuotientRing, RingIdeal,
};
use crate::par;
use crate::polyarith::{Monomial, Polynomial};

/// `r^{p^e} ∈ I^[p^e] + J`, with the generators it was checked against.
#[derive(Clone, Debug)]
pub struct FrobeniusWitness {
    pub element: Polynomial,
    pub e: u32,
    pub q: u64,
    /// Generators of `I^[q]` used in the membership test.
    pub bracket_generators: Vec<Polynomial>,
}

impl FrobeniusWitness {
    /// Recomputes `r^q` by repeated multiplication and tests membership against a
    /// freshly built ideal, sharing no cached basis with the original search.
    pub fn recheck(&self, ideal: &RingIdeal) -> Result<bool> {
        let ring = ideal.ring();
        let power = self.element.pow(self.q)?;
        let mut gens = Vec::new();
        for g in ideal.generators() {
            gens.push(g.pow(self.q)?);
        }
        gens.extend(ring.defining_ideal().generators().iter().cloned());
        let fresh = Ideal::new(ring.ctx(), gens)?;
        fresh.try_contains(&power)
    }
}

/// Result of a bounded Frobenius-closure membership test.
#[derive(Clone, Debug)]
pub enum FrobeniusOutcome {
    Member(FrobeniusWitness),
    /// No `e ≤ e_max` works; not a proof of non-membership.
    NotUpToBound {
        e_max: u32,
    },
}

impl FrobeniusOutcome {
    pub fn witness(&self) -> Option<&FrobeniusWitness> {
        match self {
            Self::Member(w) => Some(w),
            Self::NotUpToBound { .. } => None,
        }
    }
}

/// Smallest `e ≤ e_max` with `r^{p^e} ∈ I^[p^e] + J`.
pub fn frobenius_member(r: &Polynomial, ideal: &RingIdeal, e_max: u32) -> Result<FrobeniusOutcome> {
    for e in 0..=e_max {
        if let Some(w) = member_at(r, ideal, e)? {
            return Ok(FrobeniusOutcome::Member(w));
        }
    }
    Ok(FrobeniusOutcome::NotUpToBound { e_max })
}

fn member_at(r: &Polynomial, ideal: &RingIdeal, e: u32) -> Result<Option<FrobeniusWitness>> {
    let bracket = bracket_power(ideal, e)?;
    let power = r.frobenius_power(e)?;
    if !bracket.ambient().try_contains(&power)? {
        return Ok(None);
    }
    let q = ideal.ring().characteristic().pow(e);
    Ok(Some(FrobeniusWitness {
        element: r.clone(),
        e,
        q,
        bracket_generators: bracket.generators().to_vec(),
    }))
}

/// Bounds and sampling for closedness scans.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanOptions {
    pub degree_bound: u64,
    pub e_max: u32,
    /// Random combinations of standard monomials drawn per degree.
    pub samples: usize,
    pub seed: u64,
}

impl ScanOptions {
    pub fn new(degree_bound: u64, e_max: u32) -> Self {
        Self {
            degree_bound,
            e_max,
            samples: 100,
            seed: 0,
        }
    }
}

/// Candidates outside `I`: standard monomials of `R/I` in degrees `≤ D`, plus
/// seeded random combinations within each degree. Sorted by degree, then
/// descending in the ring's order.
pub fn scan_candidates(ideal: &RingIdeal, opts: &ScanOptions) -> Vec<Polynomial> {
    let ring = ideal.ring();
    let ctx = ring.ctx();
    let p = ring.characteristic();
    let std = standard_monomials(ideal.ambient(), ring.weights(), opts.degree_bound);
    let mut by_degree: Vec<(u64, Vec<Monomial>)> = Vec::new();
    for m in std {
        let d = m.weighted_degree(ring.weights());
        match by_degree.last_mut() {
            Some((deg, v)) if *deg == d => v.push(m),
            _ => by_degree.push((d, vec![m])),
        }
    }
    let mut out = Vec::new();
    for (d, monos) in by_degree {
        let mut seen = HashSet::new();
        let mut block: Vec<Polynomial> = Vec::new();
        for m in &monos {
            let f = Polynomial::term(ctx, m.clone(), 1);
            seen.insert(f.clone());
            block.push(f);
        }
        if monos.len() > 1 {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(d);
            let mut sampled = Vec::new();
            for _ in 0..opts.samples {
                let f = Polynomial::from_terms(ctx, monos.iter().map(|m| (m.clone(), rng.gen_range(0..p))));
                if !f.is_zero() && seen.insert(f.monic()) {
                    sampled.push(f.monic());
                }
            }
            sampled.sort_by(cmp_desc);
            block.extend(sampled);
        }
        out.extend(block);
    }
    out
}

fn cmp_desc(a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    let order = a.order();
    for (x, y) in a.terms().iter().zip(b.terms()) {
        let c = order.compare(&y.0, &x.0).then(y.1.cmp(&x.1));
        if c.is_ne() {
            return c;
        }
    }
    b.len().cmp(&a.len())
}

/// Every scanned element found in `I^F \ I`. An empty result means no violation up
/// to the bounds, not that `I` is Frobenius closed.
pub fn frobenius_closed_scan(ideal: &RingIdeal, opts: &ScanOptions) -> Result<Vec<FrobeniusWitness>> {
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    let candidates = scan_candidates(ideal, opts);
    let brackets = (1..=opts.e_max)
        .map(|e| bracket_power(ideal, e))
        .collect::<Result<Vec<_>>>()?;
    for b in &brackets {
        b.ambient().basis();
    }
    let results = par::map(&candidates, |r| -> Result<Option<FrobeniusWitness>> {
        for (i, b) in brackets.iter().enumerate() {
            let e = i as u32 + 1;
            if b.ambient().try_contains(&r.frobenius_power(e)?)? {
                return Ok(Some(FrobeniusWitness {
                    element: r.clone(),
                    e,
                    q: ideal.ring().characteristic().pow(e),
                    bracket_generators: b.generators().to_vec(),
                }));
            }
        }
        Ok(None)
    });
    results.into_iter().filter_map(|r| r.transpose()).collect()
}

/// Fedder's criterion: `S/J` is F-pure iff `(J^[p] : J) ⊄ m^[p]`. A principal `J = (f)`
/// reduces to `f^{p-1} ∉ m^[p]`.
pub fn fedder_f_pure(ring: &QuotientRing) -> bool {
    let j = ring.defining_ideal();
    if j.is_zero() {
        return true;
    }
    let gb = j.basis();
    if gb.is_unit() {
        return true;
    }
    let p = ring.characteristic();
    if gb.len() == 1 {
        let f = &gb.generators()[0];
        let power = f.pow(p - 1).expect("degree of f^(p-1) fits");
        return !in_frobenius_of_maximal(&power, p);
    }
    let ctx = ring.ctx();
    let bracket = Ideal::new(
        ctx,
        j.generators()
            .iter()
            .map(|g| g.frobenius_power(1).expect("bracket power of J fits")),
    )
    .expect("same context");
    let mut colon: Option<Ideal> = None;
    for g in j.generators() {
        let part = colon_by_element(&bracket, g).expect("colon within one ring");
        colon = Some(match colon {
            None => part,
            Some(prev) => intersect_ambient(&prev, &part).expect("intersection within one ring"),
        });
    }
    colon
        .expect("J has generators")
        .generators()
        .iter()
        .any(|g| !in_frobenius_of_maximal(g, p))
}

/// Whether `f ∈ (x_1^p, .., x_n^p)`: every term has some exponent `≥ p`.
fn in_frobenius_of_maximal(f: &Polynomial, p: u64) -> bool {
    f.terms()
        .iter()
        .all(|(m, _)| m.exponents().iter().any(|&a| a as u64 >= p))
}

/// Scan outcome for one power `I^n`.
#[derive(Clone, Debug)]
pub struct PowerScan {
    pub n: u32,
    pub witnesses: Vec<FrobeniusWitness>,
}

/// Runs [`frobenius_closed_scan`] on `I^n` for `n = 1..=n_max`.
pub fn powers_closed_scan(ideal: &RingIdeal, n_max: u32, opts: &ScanOptions) -> Result<Vec<PowerScan>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let power = ideal_power(ideal, n)?;
        out.push(PowerScan {
            n,
            witnesses: frobenius_closed_scan(&power, opts)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn cubic(p: u64) -> Arc<QuotientRing> {
        Arc::new(QuotientRing::new(p, &["x", "y", "z"], &["x^3 + y^3 + z^3"]).unwrap())
    }

    /// Expand `f^{p-1}` and look for a monomial with every exponent below `p`.
    fn fedder_oracle(p: u64) -> bool {
        let r = cubic(p);
        let f = r.parse("x^3 + y^3 + z^3").unwrap();
        let mut acc = Polynomial::one(r.ctx());
        for _ in 0..p - 1 {
            acc = &acc * &f;
        }
        acc.terms()
            .iter()
            .any(|(m, _)| m.exponents().iter().all(|&a| (a as u64) < p))
    }

    #[test]
    fn members_of_i_at_zero() {
        let r = cubic(7);
        let i = RingIdeal::parse(&r, &["x", "y"]).unwrap();
        for g in i.generators() {
            let w = frobenius_member(g, &i, 0).unwrap();
            assert_eq!(w.witness().unwrap().e, 0);
        }
    }

    #[test]
    fn z_squared_in_char_two() {
        let r = cubic(2);
        let i = RingIdeal::parse(&r, &["x", "y"]).unwrap();
        let z2 = r.parse("z^2").unwrap();
        let out = frobenius_member(&z2, &i, 2).unwrap();
        let w = out.witness().unwrap();
        assert_eq!((w.e, w.q), (1, 2));
        assert!(w.recheck(&i).unwrap());
        // direct check: z^4 in (x^2, y^2) + J
        let direct = Ideal::new(r.ctx(), ["x^2", "y^2", "x^3 + y^3 + z^3"].map(|s| r.parse(s).unwrap())).unwrap();
        assert!(direct.contains(&r.parse("z^4").unwrap()));
    }

    #[test]
    fn z_squared_bounded_negative_in_char_seven() {
        let r = cubic(7);
        let i = RingIdeal::parse(&r, &["x", "y"]).unwrap();
        let out = frobenius_member(&r.parse("z^2").unwrap(), &i, 2).unwrap();
        assert!(matches!(out, FrobeniusOutcome::NotUpToBound { e_max: 2 }));
    }

    #[test]
    fn scans() {
        let r2 = cubic(2);
        let i = RingIdeal::parse(&r2, &["x", "y"]).unwrap();
        let w = frobenius_closed_scan(&i, &ScanOptions::new(2, 1)).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(r2.fmt_poly(&w[0].element), "z^2");

        let s = Arc::new(QuotientRing::polynomial_ring(5, &["x", "y"]).unwrap());
        let m = RingIdeal::parse(&s, &["x", "y"]).unwrap();
        assert!(frobenius_closed_scan(&m, &ScanOptions::new(4, 2)).unwrap().is_empty());

        let r7 = cubic(7);
        let i7 = RingIdeal::parse(&r7, &["x", "y"]).unwrap();
        assert!(frobenius_closed_scan(&i7, &ScanOptions::new(4, 1)).unwrap().is_empty());
    }

    #[test]
    fn scan_candidates_are_deterministic_and_outside_i() {
        let r = Arc::new(QuotientRing::polynomial_ring(7, &["x", "y", "z"]).unwrap());
        let i = RingIdeal::parse(&r, &["x^2", "y^2"]).unwrap();
        let opts = ScanOptions::new(3, 1);
        let a = scan_candidates(&i, &opts);
        assert_eq!(a, scan_candidates(&i, &opts));
        assert!(a.iter().all(|f| !i.contains(f)));
        let degrees: Vec<u64> = a.iter().map(|f| f.total_degree().unwrap()).collect();
        assert!(degrees.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn fedder_matches_residue_mod_three() {
        for p in [2, 5, 7, 11, 13, 31] {
            let expected = p % 3 == 1;
            assert_eq!(fedder_f_pure(&cubic(p)), expected, "p = {p}");
            assert_eq!(fedder_oracle(p), expected, "oracle p = {p}");
        }
        assert!(fedder_f_pure(&QuotientRing::polynomial_ring(3, &["x"]).unwrap()));
    }

    #[test]
    fn fedder_general_colon() {
        // two coordinate hyperplanes: a Stanley-Reisner ring, F-pure in every characteristic
        let r = QuotientRing::new(3, &["x", "y", "z"], &["x*y", "x*z"]).unwrap();
        assert!(fedder_f_pure(&r));
        // a double line is not reduced, hence not F-pure
        let r = QuotientRing::new(3, &["x", "y", "z"], &["x^2", "x*y"]).unwrap();
        assert!(!fedder_f_pure(&r));
    }

    #[test]
    fn powers_scan() {
        let r7 = cubic(7);
        let i = RingIdeal::parse(&r7, &["x", "y"]).unwrap();
        let scans = powers_closed_scan(&i, 2, &ScanOptions::new(4, 1)).unwrap();
        assert!(scans.iter().all(|s| s.witnesses.is_empty()));

        let r2 = cubic(2);
        let i = RingIdeal::parse(&r2, &["x", "y"]).unwrap();
        let scans = powers_closed_scan(&i, 1, &ScanOptions::new(2, 1)).unwrap();
        assert_eq!(r2.fmt_poly(&scans[0].witnesses[0].element), "z^2");

        let s = Arc::new(QuotientRing::polynomial_ring(5, &["x", "y"]).unwrap());
        let x = RingIdeal::parse(&s, &["x"]).unwrap();
        let scans = powers_closed_scan(&x, 3, &ScanOptions::new(4, 1)).unwrap();
        assert!(scans.iter().all(|s| s.witnesses.is_empty()));
    }

    #[test]
    fn witnesses_are_monotone_in_e() {
        let r = cubic(2);
        let i = RingIdeal::parse(&r, &["x", "y"]).unwrap();
        for w in frobenius_closed_scan(&i, &ScanOptions::new(3, 1)).unwrap() {
            let next = FrobeniusWitness {
                e: w.e + 1,
                q: w.q * 2,
                ..w.clone()
            };
            assert!(next.recheck(&i).unwrap());
        }
    }
}
