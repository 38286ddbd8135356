use super::containment::containment_with;
use super::{CheckOptions, CheckReport, FrobeniusReport, Instance, Verdict};
use crate::closure::IdealPowers;
use crate::error::{Error, Result};
use crate::frobenius::{
    fedder_f_pure, frobenius_closed_scan, frobenius_member, powers_closed_scan, FrobeniusOutcome, FrobeniusWitness,
    ScanOptions,
};
use crate::ideal_ops::{height, krull_dim, RingIdeal};
use crate::polyarith::Polynomial;
use crate::spread::{analytic_spread_with_budget, random_minimal_reduction};

fn sampled_bound(opts: &CheckOptions) -> String {
    format!(
        "elements of degree <= {} with pure-power certificates of order <= {}",
        opts.degree_bound, opts.m_max
    )
}

fn scan_bound(opts: &CheckOptions) -> String {
    format!(
        "elements of degree <= {} with Frobenius exponent e <= {}",
        opts.degree_bound, opts.e_max
    )
}

fn scan_options(opts: &CheckOptions) -> ScanOptions {
    ScanOptions {
        degree_bound: opts.degree_bound,
        e_max: opts.e_max,
        samples: opts.samples,
        seed: opts.seed,
    }
}

fn frob_report(ideal: &RingIdeal, w: &FrobeniusWitness) -> FrobeniusReport {
    FrobeniusReport {
        element: ideal.ring().fmt_poly(&w.element),
        e: w.e,
        q: w.q,
    }
}

/// Runs each `(role, k, n)` containment once, skipping repeated `(k, n)`.
fn run_instances(
    report: &mut CheckReport,
    powers: &IdealPowers,
    plan: Vec<(&str, u32, u32)>,
    claimed: bool,
    opts: &CheckOptions,
) -> Result<()> {
    for (role, k, n) in plan {
        if let Some(prev) = report.instances.iter_mut().find(|i| i.k == k && i.n == n) {
            prev.role = format!("{}+{}", prev.role, role);
            continue;
        }
        let mut inst: Instance = containment_with(powers, k, n, opts)?;
        inst.role = role.to_string();
        inst.claimed = claimed;
        report.instances.push(inst);
    }
    if report.instances.iter().any(|i| {
        i.verdict == Verdict::VerifiedSampled || i.verdict == Verdict::Refuted && i.candidates_tested.is_some()
    }) {
        report.bound = Some(sampled_bound(opts));
    }
    report.finish_instances();
    Ok(())
}

fn spread(report: &mut CheckReport, ideal: &RingIdeal, opts: &CheckOptions) -> Option<u32> {
    match analytic_spread_with_budget(ideal, opts.spread_budget) {
        Ok(l) => {
            report.invariants.analytic_spread = Some(l);
            Some(l as u32)
        }
        Err(e) => {
            report.notes.push(format!("analytic spread did not complete: {e}"));
            None
        }
    }
}

fn nonzero(ideal: &RingIdeal) -> Result<()> {
    if ideal.is_zero_in_ring() {
        return Err(Error::InvalidArgument("the ideal is zero in the ring".into()));
    }
    Ok(())
}

/// A single containment `closure(I^k) ⊆ I^n` with no theorem attached.
pub fn check_probe(ideal: &RingIdeal, k: u32, n: u32, opts: &CheckOptions) -> Result<CheckReport> {
    nonzero(ideal)?;
    let mut report = CheckReport::new("containment", ideal);
    run_instances(
        &mut report,
        &IdealPowers::new(ideal.clone()),
        vec![("probe", k, n)],
        false,
        opts,
    )?;
    Ok(report)
}

/// `closure(I^{s+n}) ⊆ I^n` with `s` the number of generators, and
/// `closure(I^{ℓ+n}) ⊆ I^n` when the analytic spread completes. Claimed when the
/// ring passes Fedder's criterion.
pub fn check_thm_fpure(ideal: &RingIdeal, n_range: &[u32], opts: &CheckOptions) -> Result<CheckReport> {
    nonzero(ideal)?;
    let mut report = CheckReport::new("bs_fpure", ideal);
    let f_pure = fedder_f_pure(ideal.ring());
    report.invariants.f_pure = Some(f_pure);
    if !f_pure {
        report
            .notes
            .push("ring fails Fedder's criterion; the containments are probes, not theorem instances".into());
    }
    let s = ideal.generators().len() as u32;
    let l = spread(&mut report, ideal, opts);
    let mut plan = Vec::new();
    for &n in n_range {
        plan.push(("generators+n", s + n, n));
        if let Some(l) = l {
            plan.push(("spread+n", l + n, n));
        }
    }
    run_instances(&mut report, &IdealPowers::new(ideal.clone()), plan, f_pure, opts)?;
    Ok(report)
}

/// Whether parameter ideals are known Frobenius closed: asserted directly, implied
/// by an asserted Cohen-Macaulay F-injective ring, or by F-purity.
fn params_closed(ideal: &RingIdeal, report: &mut CheckReport) -> bool {
    let a = ideal.ring().assumptions();
    if a.param_frobenius_closed || (a.cohen_macaulay && a.f_injective) {
        return true;
    }
    let f_pure = fedder_f_pure(ideal.ring());
    report.invariants.f_pure = Some(f_pure);
    if f_pure {
        report
            .notes
            .push("parameter ideals are Frobenius closed because the ring is F-pure".into());
    }
    f_pure
}

fn spread_height_dim(
    report: &mut CheckReport,
    ideal: &RingIdeal,
    opts: &CheckOptions,
) -> Result<(Option<u32>, u32, u32)> {
    let h = height(ideal)? as u32;
    let d = krull_dim(ideal.ring())? as u32;
    report.invariants.height = Some(h as usize);
    report.invariants.dimension = Some(d as usize);
    let l = spread(report, ideal, opts);
    Ok((l, h, d))
}

/// `closure(I^{2ℓ-h+1}) ⊆ I` and `closure(I^{dim R + 1}) ⊆ I` when parameter ideals
/// are Frobenius closed.
pub fn check_thm_param(ideal: &RingIdeal, opts: &CheckOptions) -> Result<CheckReport> {
    nonzero(ideal)?;
    let mut report = CheckReport::new("bs_param", ideal);
    if !params_closed(ideal, &mut report) {
        return Err(Error::MissingAssumption(
            "needs `param_frobenius_closed` (or an F-pure ring)".into(),
        ));
    }
    let (l, h, d) = spread_height_dim(&mut report, ideal, opts)?;
    let mut plan = Vec::new();
    if let Some(l) = l {
        plan.push(("2*spread-height+1", (2 * l + 1).saturating_sub(h).max(1), 1));
    }
    plan.push(("dim+1", d + 1, 1));
    run_instances(&mut report, &IdealPowers::new(ideal.clone()), plan, true, opts)?;
    Ok(report)
}

/// `closure(I^{2ℓ-h+n}) ⊆ I^n` and `closure(I^{dim R + n}) ⊆ I^n` for a Cohen-Macaulay
/// ring whose parameter ideals are Frobenius closed.
pub fn check_thm_cm(ideal: &RingIdeal, n_range: &[u32], opts: &CheckOptions) -> Result<CheckReport> {
    nonzero(ideal)?;
    let mut report = CheckReport::new("bs_cm", ideal);
    if !ideal.ring().assumptions().cohen_macaulay {
        return Err(Error::MissingAssumption("needs `cohen_macaulay`".into()));
    }
    if !params_closed(ideal, &mut report) {
        return Err(Error::MissingAssumption(
            "needs `f_injective` or `param_frobenius_closed` (or an F-pure ring)".into(),
        ));
    }
    let (l, h, d) = spread_height_dim(&mut report, ideal, opts)?;
    let mut plan = Vec::new();
    for &n in n_range {
        if let Some(l) = l {
            plan.push(("2*spread-height+n", (2 * l + n).saturating_sub(h).max(1), n));
        }
        plan.push(("dim+n", d + n, n));
    }
    run_instances(&mut report, &IdealPowers::new(ideal.clone()), plan, true, opts)?;
    Ok(report)
}

/// Frobenius-closedness scan of the powers `I^1..I^{n_max}`. A witness at `n = 1`
/// means `I^F ≠ I`, so the statement that powers stay closed is vacuous there.
pub fn check_powers_closed(ideal: &RingIdeal, n_max: u32, opts: &CheckOptions) -> Result<CheckReport> {
    nonzero(ideal)?;
    let mut report = CheckReport::new("powers_closed", ideal);
    report.bound = Some(scan_bound(opts));
    let scans = powers_closed_scan(ideal, n_max, &scan_options(opts))?;
    for s in &scans {
        report
            .details
            .insert(format!("witnesses_at_n{}", s.n), s.witnesses.len().to_string());
        report
            .frobenius_witnesses
            .extend(s.witnesses.iter().map(|w| frob_report(ideal, w)));
    }
    let base_open = scans.first().is_some_and(|s| !s.witnesses.is_empty());
    let later_open: Vec<u32> = scans
        .iter()
        .skip(1)
        .filter(|s| !s.witnesses.is_empty())
        .map(|s| s.n)
        .collect();
    report.verdict = if base_open {
        report
            .notes
            .push("I itself is not Frobenius closed; the hypothesis fails and the statement is vacuous".into());
        Verdict::InconclusiveAtBound
    } else if !later_open.is_empty() {
        report.notes.push(format!(
            "I scanned closed but powers {later_open:?} are not; the generators are not a regular sequence or the scan is wrong"
        ));
        Verdict::Refuted
    } else {
        Verdict::VerifiedSampled
    };
    Ok(report)
}

/// Frobenius-closedness scan of `I` alone.
pub fn check_frobenius_scan(ideal: &RingIdeal, opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("frobenius_closed", ideal);
    report.bound = Some(scan_bound(opts));
    let w = frobenius_closed_scan(ideal, &scan_options(opts))?;
    report.frobenius_witnesses = w.iter().map(|w| frob_report(ideal, w)).collect();
    report.verdict = if w.is_empty() {
        Verdict::VerifiedSampled
    } else {
        Verdict::Refuted
    };
    Ok(report)
}

/// Bounded membership of `r` in the Frobenius closure of `I`: verified with a
/// witness `r^q ∈ I^[q]`, inconclusive when no `e <= e_max` works.
pub fn check_frobenius_member(ideal: &RingIdeal, r: &Polynomial, opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("frobenius_member", ideal);
    report.details.insert("element".into(), ideal.ring().fmt_poly(r));
    match frobenius_member(r, ideal, opts.e_max)? {
        FrobeniusOutcome::Member(w) => {
            report.frobenius_witnesses.push(frob_report(ideal, &w));
            report.verdict = Verdict::VerifiedExact;
        }
        FrobeniusOutcome::NotUpToBound { e_max } => {
            report.bound = Some(format!("Frobenius exponent e <= {e_max}"));
            report.verdict = Verdict::InconclusiveAtBound;
        }
    }
    Ok(report)
}

/// Fedder's criterion for the ring of `ideal`. Exact either way: verified when the
/// ring is F-pure, refuted when not.
pub fn check_fedder(ideal: &RingIdeal) -> Result<CheckReport> {
    let mut report = CheckReport::new("fedder", ideal);
    let f_pure = fedder_f_pure(ideal.ring());
    report.invariants.f_pure = Some(f_pure);
    report.verdict = if f_pure {
        Verdict::VerifiedExact
    } else {
        Verdict::Refuted
    };
    Ok(report)
}

/// `ht(I) ≤ ℓ(I) ≤ dim R`. Height needs the ring asserted equidimensional.
pub fn check_spread(ideal: &RingIdeal, opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("spread", ideal);
    let d = krull_dim(ideal.ring())?;
    report.invariants.dimension = Some(d);
    let h = match height(ideal) {
        Ok(h) => Some(h),
        Err(Error::MissingAssumption(_)) => {
            report
                .notes
                .push("height skipped: ring not asserted equidimensional".into());
            None
        }
        Err(e) => return Err(e),
    };
    report.invariants.height = h;
    report.verdict = match spread(&mut report, ideal, opts) {
        None => Verdict::InconclusiveAtBound,
        Some(l) => {
            let l = l as usize;
            if h.is_some_and(|h| h > l) || l > d {
                Verdict::Refuted
            } else {
                Verdict::VerifiedExact
            }
        }
    };
    Ok(report)
}

/// Random search for a reduction with `target` generators.
pub fn check_reduction(ideal: &RingIdeal, target: usize, opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("reduction", ideal);
    report.bound = Some(format!(
        "{} trials with seed {}, reduction exponent t <= {}",
        opts.reduction_trials, opts.seed, opts.t_max
    ));
    report.details.insert("target".into(), target.to_string());
    match random_minimal_reduction(ideal, target, opts.seed, opts.reduction_trials, opts.t_max)? {
        Some(red) => {
            report.details.insert("reduction".into(), red.ideal.describe());
            report.details.insert("t".into(), red.t.to_string());
            report.details.insert("trial".into(), red.trial.to_string());
            report.verdict = Verdict::VerifiedExact;
        }
        None => {
            report
                .notes
                .push("no reduction found; over a finite field this is not proof that none exists".into());
            report.verdict = Verdict::InconclusiveAtBound;
        }
    }
    Ok(report)
}
