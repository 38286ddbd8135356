use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CertReport, CheckOptions, Instance, Refutation, Verdict};
use crate::closure::{
    check_containment_exact, monomial_exponents, pure_power_witness_in, verify_integral_cert, IdealPowers,
    IntegralCert, NewtonPolyhedron,
};
use crate::error::{Error, Result};
use crate::ideal_ops::{ideal_power, standard_monomials, QuotientRing, RingIdeal};
use crate::par;
use crate::polyarith::{Monomial, Polynomial};

/// Pure-power search depth used to certify monomial refutations found exactly.
const EXACT_WITNESS_M: u32 = 12;

fn is_exact_case(ideal: &RingIdeal) -> bool {
    ideal.ring().is_polynomial_ring() && ideal.is_monomial()
}

/// Elements to test against `closure(I^k) ⊆ I^n`, all outside `I^n`: standard
/// monomials of `R/I^n`, basis monomials of `R`, and seeded random combinations of
/// the former within each degree, up to `degree_bound`.
pub fn containment_candidates(target: &RingIdeal, opts: &CheckOptions) -> Vec<Polynomial> {
    let ring = target.ring();
    let ctx = ring.ctx();
    let w = ring.weights();
    let outside = standard_monomials(target.ambient(), w, opts.degree_bound);
    let basis = standard_monomials(ring.defining_ideal(), w, opts.degree_bound);
    let mut seen = HashSet::new();
    let mut out: Vec<(u64, Polynomial)> = Vec::new();
    let mut push = |f: Polynomial, out: &mut Vec<(u64, Polynomial)>| {
        let f = f.monic();
        if !f.is_zero() && seen.insert(f.clone()) {
            out.push((f.homogeneous_degree(w).unwrap(), f));
        }
    };
    for m in &outside {
        push(Polynomial::term(ctx, m.clone(), 1), &mut out);
    }
    for m in &basis {
        let f = Polynomial::term(ctx, m.clone(), 1);
        if !target.contains(&f) {
            push(f, &mut out);
        }
    }
    let mut by_degree: Vec<(u64, Vec<&Monomial>)> = Vec::new();
    for m in &outside {
        let d = m.weighted_degree(w);
        match by_degree.last_mut() {
            Some((deg, v)) if *deg == d => v.push(m),
            _ => by_degree.push((d, vec![m])),
        }
    }
    let p = ring.characteristic();
    for (d, monos) in by_degree {
        if monos.len() < 2 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(d);
        for _ in 0..opts.samples {
            let f = Polynomial::from_terms(ctx, monos.iter().map(|m| ((*m).clone(), rng.gen_range(0..p))));
            push(f, &mut out);
        }
    }
    out.sort_by_key(|(d, _)| *d);
    out.into_iter().map(|(_, f)| f).collect()
}

fn cert_report(ring: &QuotientRing, cert: &IntegralCert) -> CertReport {
    CertReport {
        m: cert.m,
        coefficients: cert.coeffs.iter().map(|a| ring.fmt_poly(a)).collect(),
    }
}

fn refutation(ring: &QuotientRing, r: Polynomial, cert: Option<IntegralCert>) -> Refutation {
    Refutation {
        element: ring.fmt_poly(&r),
        method: if cert.is_some() {
            "pure_power"
        } else {
            "newton_polyhedron"
        },
        certificate: cert.as_ref().map(|c| cert_report(ring, c)),
        raw_element: r,
        raw_certificate: cert,
    }
}

/// Tests `closure(I^k) ⊆ I^n` once. The returned instance has role `probe` and is
/// not marked as claimed; theorem checks overwrite both.
pub fn check_containment(ideal: &RingIdeal, k: u32, n: u32, opts: &CheckOptions) -> Result<Instance> {
    containment_with(&IdealPowers::new(ideal.clone()), k, n, opts)
}

pub(crate) fn containment_with(powers: &IdealPowers, k: u32, n: u32, opts: &CheckOptions) -> Result<Instance> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument("exponents must be positive".into()));
    }
    let ideal = powers.base();
    let ring = ideal.ring();
    let mut inst = Instance {
        role: "probe".into(),
        k,
        n,
        claimed: false,
        verdict: Verdict::VerifiedExact,
        witness: None,
        candidates_tested: None,
    };
    if ideal.is_zero_in_ring() {
        return Err(Error::InvalidArgument("containment checks need a nonzero ideal".into()));
    }
    if ideal.is_unit() {
        return Ok(inst);
    }
    if is_exact_case(ideal) {
        let out = check_containment_exact(k, n, ideal)?;
        if let Some(v) = out.witness {
            let r = Polynomial::term(ring.ctx(), v, 1);
            let cert = pure_power_witness_in(&r, powers, k, EXACT_WITNESS_M)?;
            inst.verdict = Verdict::Refuted;
            inst.witness = Some(refutation(ring, r, cert));
        }
        return Ok(inst);
    }
    let target = powers.get(n)?;
    let candidates = containment_candidates(&target, opts);
    for m in 1..=opts.m_max {
        powers.get(k * m)?.ambient().basis();
    }
    let found = par::find_first(&candidates, |r| {
        pure_power_witness_in(r, powers, k, opts.m_max).ok().flatten()
    });
    inst.candidates_tested = Some(candidates.len());
    match found {
        Some((i, cert)) => {
            inst.verdict = Verdict::Refuted;
            inst.witness = Some(refutation(ring, candidates[i].clone(), Some(cert)));
        }
        None => inst.verdict = Verdict::VerifiedSampled,
    }
    Ok(inst)
}

/// Rebuilds the ring and ideal from their generators, so no cached basis is shared
/// with the computation that produced the witness.
fn fresh_copy(ideal: &RingIdeal) -> Result<RingIdeal> {
    let ring = ideal.ring();
    let names: Vec<&str> = ring.vars().iter().map(|s| s.as_str()).collect();
    let fresh = QuotientRing::from_polynomials(
        ring.field(),
        &names,
        ring.weights().to_vec(),
        ring.defining_ideal().generators().to_vec(),
    )?
    .with_assumptions(ring.assumptions());
    RingIdeal::new(Arc::new(fresh), ideal.generators().to_vec())
}

/// Re-verifies a refutation from scratch: the element is integral over `I^k` (by
/// its certificate or by the Newton polyhedron) and lies outside `I^n`.
pub fn verify_refutation(ideal: &RingIdeal, k: u32, n: u32, witness: &Refutation) -> Result<bool> {
    let ideal = fresh_copy(ideal)?;
    let r = &witness.raw_element;
    let integral = match &witness.raw_certificate {
        Some(cert) => cert.element == *r && verify_integral_cert(cert, &ideal_power(&ideal, k)?)?,
        None => {
            if !r.is_monomial() {
                return Ok(false);
            }
            let np = NewtonPolyhedron::new(monomial_exponents(&ideal)?);
            np.contains_scaled(r.leading_monomial().unwrap().exponents(), k)
        }
    };
    Ok(integral && !ideal_power(&ideal, n)?.contains(r))
}
