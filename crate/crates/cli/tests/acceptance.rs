//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//! Runs without the libtest harness so the lines always reach the terminal.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skoda_core::closure::{
    check_containment_exact, monomial_integral_closure, newton_polyhedron, verify_integral_cert, IntegralCert,
};
use skoda_core::frobenius::{fedder_f_pure, frobenius_member, powers_closed_scan, FrobeniusOutcome, ScanOptions};
use skoda_core::groebner::{s_polynomial, Ideal};
use skoda_core::harness::{
    check_containment, check_fedder, check_reduction, multi_prime, verify_refutation, CheckOptions, InstanceSpec,
    Verdict,
};
use skoda_core::ideal_ops::{height, krull_dim, Assumptions, QuotientRing, RingIdeal};
use skoda_core::polyarith::{
    monomials_of_degree, parse_int_polynomial, Monomial, MonomialOrder, PolyContext, Polynomial, PrimeField,
};
use skoda_core::spread::{analytic_spread, analytic_spread_with_budget, verify_reduction};

/// Wall-clock limits per criterion.
const LIMIT_FERMAT_CUBIC: Duration = Duration::from_secs(60);
const LIMIT_FEDDER: Duration = Duration::from_secs(60);
const LIMIT_FROBENIUS: Duration = Duration::from_secs(30);
const LIMIT_MONOMIAL_SWEEP: Duration = Duration::from_secs(600);
const LIMIT_POWERS_SCAN: Duration = Duration::from_secs(300);

/// Largest `m` tried by the pure-power closure oracle.
const ORACLE_M: u32 = 12;
/// Membership instances checked against the Macaulay matrix.
const MACAULAY_INSTANCES: usize = 500;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn cubic(p: u64, assumptions: Assumptions) -> Arc<QuotientRing> {
    Arc::new(
        QuotientRing::new(p, &["x", "y", "z"], &["x^3 + y^3 + z^3"])
            .unwrap()
            .with_assumptions(assumptions),
    )
}

fn equidimensional() -> Assumptions {
    Assumptions {
        equidimensional: true,
        ..Default::default()
    }
}

fn monomial_ideal(ring: &Arc<QuotientRing>, exps: &[Vec<u32>]) -> RingIdeal {
    let gens = exps
        .iter()
        .map(|e| Polynomial::term(ring.ctx(), Monomial::from_exponents(e), 1))
        .collect();
    RingIdeal::new(ring.clone(), gens).unwrap()
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng, nvars: usize, max_gens: usize, max_exp: u32) -> Vec<Vec<u32>> {
    let count = rng.gen_range(1..=max_gens);
    let mut gens: Vec<Vec<u32>> = Vec::new();
    while gens.len() < count {
        let v: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        if v.iter().all(|&e| e == 0) || gens.contains(&v) {
            continue;
        }
        gens.push(v);
    }
    gens
}

// 1. The Fermat cubic over F_7 with I = (x, y).
fn fermat_cubic_example() -> Outcome {
    let start = Instant::now();
    let r = cubic(7, equidimensional());
    let i = RingIdeal::parse(&r, &["x", "y"]).unwrap();
    let z2 = r.parse("z^2").unwrap();
    ensure(fedder_f_pure(&r), || "ring should be F-pure".into())?;
    ensure(!i.contains(&z2), || "z^2 should not lie in I".into())?;
    let i2 = RingIdeal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
    let cert = IntegralCert::pure_power(&z2, 3).unwrap();
    ensure(verify_integral_cert(&cert, &i2).unwrap(), || {
        "(z^2)^3 ∈ (I^2)^3 should verify".into()
    })?;

    let opts = CheckOptions {
        degree_bound: 8,
        m_max: 4,
        ..Default::default()
    };
    let k2 = check_containment(&i, 2, 1, &opts).unwrap();
    ensure(k2.verdict == Verdict::Refuted, || format!("k=2 gave {}", k2.verdict))?;
    let w = k2.witness.as_ref().unwrap();
    ensure(w.element == "z^2", || format!("witness {}", w.element))?;
    ensure(verify_refutation(&i, 2, 1, w).unwrap(), || {
        "witness does not re-verify".into()
    })?;
    let k3 = check_containment(&i, 3, 1, &opts).unwrap();
    ensure(k3.verdict == Verdict::VerifiedSampled, || {
        format!("k=3 gave {}", k3.verdict)
    })?;

    let l = analytic_spread(&i).unwrap();
    let h = height(&i).unwrap();
    ensure(l == 2 && h == 2, || format!("spread {l}, height {h}"))?;
    within(start, LIMIT_FERMAT_CUBIC)?;
    Ok(format!(
        "z^2 refutes k=2 (m={}), k=3 sampled over {} candidates, spread 2, height 2",
        w.certificate.as_ref().map_or(0, |c| c.m),
        k3.candidates_tested.unwrap_or(0)
    ))
}

/// `f^{p-1} ∉ m^[p]` by expanding the power and looking for a term with every
/// exponent below `p`.
fn fermat_cubic_f_pure_by_expansion(p: u64) -> bool {
    let ctx = PolyContext::new(3, PrimeField::new(p).unwrap(), MonomialOrder::Grevlex);
    let f = parse_int_polynomial("x^3 + y^3 + z^3", &["x", "y", "z"])
        .unwrap()
        .to_polynomial(ctx);
    let g = f.pow(p - 1).unwrap();
    g.terms()
        .iter()
        .any(|(m, _)| m.exponents().iter().all(|&e| u64::from(e) < p))
}

// 2. F-purity of the Fermat cubic across primes.
fn fedder_sweep() -> Outcome {
    let start = Instant::now();
    let primes = [2, 5, 7, 11, 13, 31];
    let vars = ["x", "y", "z"];
    let spec = InstanceSpec {
        vars: vars.iter().map(|s| s.to_string()).collect(),
        weights: vec![1; 3],
        relations: vec![parse_int_polynomial("x^3 + y^3 + z^3", &vars).unwrap()],
        generators: vars.iter().map(|v| parse_int_polynomial(v, &vars).unwrap()).collect(),
        assumptions: Assumptions::default(),
    };
    let runs = multi_prime(&spec, &primes, check_fedder);
    let mut pure = Vec::new();
    for run in &runs {
        let rep = run
            .report
            .as_ref()
            .ok_or_else(|| format!("p={} did not run", run.prime))?;
        let f_pure = rep.invariants.f_pure.unwrap();
        ensure(f_pure == fermat_cubic_f_pure_by_expansion(run.prime), || {
            format!("p={}: disagrees with direct expansion", run.prime)
        })?;
        ensure(f_pure == (run.prime % 3 == 1), || {
            format!("p={}: f_pure={f_pure}", run.prime)
        })?;
        if f_pure {
            pure.push(run.prime);
        }
    }
    ensure(pure == [7, 13, 31], || format!("F-pure at {pure:?}"))?;
    within(start, LIMIT_FEDDER)?;
    Ok(format!("F-pure exactly at {pure:?} of {primes:?}"))
}

// 3. z^2 in the Frobenius closure of (x, y) at p = 2 but not found at p = 7.
fn frobenius_witness() -> Outcome {
    let start = Instant::now();
    let r = cubic(2, Assumptions::default());
    let i = RingIdeal::parse(&r, &["x", "y"]).unwrap();
    let z2 = r.parse("z^2").unwrap();
    let w = match frobenius_member(&z2, &i, 2).unwrap() {
        FrobeniusOutcome::Member(w) => w,
        other => return Err(format!("p=2: {other:?}")),
    };
    ensure(w.e == 1 && w.q == 2, || format!("p=2: e={}, q={}", w.e, w.q))?;
    ensure(w.recheck(&i).unwrap(), || "p=2: witness does not re-verify".into())?;
    let r7 = cubic(7, Assumptions::default());
    let i7 = RingIdeal::parse(&r7, &["x", "y"]).unwrap();
    let z2 = r7.parse("z^2").unwrap();
    let out = frobenius_member(&z2, &i7, 2).unwrap();
    ensure(matches!(out, FrobeniusOutcome::NotUpToBound { e_max: 2 }), || {
        format!("p=7: {out:?}")
    })?;
    within(start, LIMIT_FROBENIUS)?;
    Ok("p=2 witness at e=1 re-verifies, p=7 none up to e=2".into())
}

// 4. closure(I^{s+n}) ⊆ I^n and closure(I^{ℓ+n}) ⊆ I^n for random monomial ideals.
fn monomial_sweep() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let rings: Vec<Arc<QuotientRing>> = [1, 2, 3]
        .iter()
        .map(|&n| {
            let vars = &["x", "y", "z"][..n];
            Arc::new(QuotientRing::polynomial_ring(7, vars).unwrap())
        })
        .collect();
    let (mut s_checks, mut l_checks, mut spread_done) = (0, 0, 0);
    for trial in 0..200 {
        let nvars = rng.gen_range(1..=3);
        let exps = random_monomial_ideal(&mut rng, nvars, 4, 4);
        let ring = &rings[nvars - 1];
        let i = monomial_ideal(ring, &exps);
        let s = exps.len() as u32;
        let l = analytic_spread_with_budget(&i, 20_000).ok();
        if l.is_some() {
            spread_done += 1;
        }
        for n in 1..=2 {
            let c = check_containment_exact(s + n, n, &i).unwrap();
            ensure(c.holds, || {
                format!("trial {trial} {exps:?}: closure(I^{}) ⊄ I^{n}", s + n)
            })?;
            s_checks += 1;
            if let Some(l) = l {
                let c = check_containment_exact(l as u32 + n, n, &i).unwrap();
                ensure(c.holds, || {
                    format!("trial {trial} {exps:?}: closure(I^{}) ⊄ I^{n}", l as u32 + n)
                })?;
                l_checks += 1;
            }
        }
    }
    within(start, LIMIT_MONOMIAL_SWEEP)?;
    Ok(format!(
        "{s_checks} generator-count and {l_checks} spread containments hold; spread completed on {spread_done}/200"
    ))
}

/// Minimal exponent vectors of `I^m` for `m = 1..=m_max`, from the generators alone.
fn power_minimal_sums(gens: &[Vec<u32>], m_max: u32) -> Vec<Vec<Vec<u32>>> {
    let minimalize = |mut v: Vec<Vec<u32>>| {
        v.sort();
        v.dedup();
        let keep: Vec<Vec<u32>> = v
            .iter()
            .filter(|a| !v.iter().any(|b| b != *a && dominates(a, b)))
            .cloned()
            .collect();
        keep
    };
    let mut out = vec![minimalize(gens.to_vec())];
    for _ in 1..m_max {
        let last = out.last().unwrap();
        let next = last
            .iter()
            .flat_map(|a| gens.iter().map(move |g| a.iter().zip(g).map(|(x, y)| x + y).collect()))
            .collect();
        out.push(minimalize(next));
    }
    out
}

/// `x^v` is integral over `I` when `x^{mv} ∈ I^m` for some `m <= ORACLE_M`.
fn oracle_in_closure(sums: &[Vec<Vec<u32>>], v: &[u32]) -> bool {
    sums.iter().enumerate().any(|(j, s)| {
        let m = j as u32 + 1;
        let mv: Vec<u32> = v.iter().map(|e| e * m).collect();
        s.iter().any(|a| dominates(&mv, a))
    })
}

fn box_points(upper: &[u32]) -> Vec<Vec<u32>> {
    let mut pts = vec![Vec::new()];
    for &u in upper {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=u).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Compares the computed closure with the oracle on a box one past the largest
/// generator exponents, and checks the closure generators lie inside the
/// polyhedron's box bound.
fn closure_disagreements(ring: &Arc<QuotientRing>, gens: &[Vec<u32>], sums_m: u32) -> Result<(), String> {
    let i = monomial_ideal(ring, gens);
    let closure = monomial_integral_closure(&i).unwrap();
    let cl: Vec<Vec<u32>> = closure
        .generators()
        .iter()
        .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
        .collect();
    let bound = newton_polyhedron(&i).unwrap().box_bound();
    for g in &cl {
        ensure(dominates(&bound, g), || {
            format!("{gens:?}: generator {g:?} outside box {bound:?}")
        })?;
    }
    let sums = power_minimal_sums(gens, sums_m);
    let upper: Vec<u32> = (0..ring.nvars())
        .map(|j| gens.iter().map(|g| g[j]).max().unwrap() + 1)
        .collect();
    for v in box_points(&upper) {
        let computed = cl.iter().any(|g| dominates(&v, g));
        let oracle = oracle_in_closure(&sums, &v);
        ensure(computed == oracle, || {
            format!("{gens:?}: {v:?} computed {computed}, oracle {oracle}")
        })?;
    }
    Ok(())
}

/// Monomial ideals of k[x, y] with exponents <= 4, as antichains of the grid
/// other than the unit ideal.
fn grid_antichains() -> Vec<Vec<Vec<u32>>> {
    // An antichain in the 5x5 grid is a strictly decreasing staircase: x-exponents
    // increase while y-exponents decrease.
    let mut out = Vec::new();
    fn go(start_x: u32, max_y: Option<u32>, cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for x in start_x..=4 {
            let top = max_y.map_or(4, |y| y.saturating_sub(1));
            if max_y == Some(0) {
                break;
            }
            for y in 0..=top {
                cur.push(vec![x, y]);
                go(x + 1, Some(y), cur, out);
                cur.pop();
            }
        }
    }
    go(0, None, &mut Vec::new(), &mut out);
    out.retain(|a| !a.contains(&vec![0, 0]));
    out
}

// 5. Newton-polyhedron closure against the pure-power oracle.
fn closure_oracle() -> Outcome {
    let r2 = Arc::new(QuotientRing::polynomial_ring(5, &["x", "y"]).unwrap());
    let r3 = Arc::new(QuotientRing::polynomial_ring(5, &["x", "y", "z"]).unwrap());
    let grid = grid_antichains();
    for gens in &grid {
        closure_disagreements(&r2, gens, ORACLE_M)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let gens = random_monomial_ideal(&mut rng, 3, 4, 4);
        closure_disagreements(&r3, &gens, ORACLE_M)?;
    }
    Ok(format!(
        "0 disagreements on {} two-variable grid ideals and 100 random three-variable ideals (m <= {ORACLE_M})",
        grid.len()
    ))
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u128, a as u128 % p as u128, p as u128 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    r as u64
}

/// Rank of a dense matrix over F_p.
fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c], p);
        let pivot: Vec<u64> = rows[rank]
            .iter()
            .map(|&x| (x as u128 * s as u128 % p as u128) as u64)
            .collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c] as u128;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = ((*x as u128 + (p as u128 - y as u128) * f) % p as u128) as u64;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Membership of a homogeneous `f` in a homogeneous ideal by linear algebra in
/// the degree of `f`: `f ∈ I` iff `f` lies in the span of `m * g`.
fn macaulay_member(f: &Polynomial, gens: &[Polynomial], nvars: usize, p: u64) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = f.total_degree().unwrap() as u32;
    let cols: HashMap<Monomial, usize> = monomials_of_degree(nvars, d)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let dense = |q: &Polynomial| {
        let mut row = vec![0u64; cols.len()];
        for (m, c) in q.terms() {
            row[cols[m]] = *c;
        }
        row
    };
    let mut rows = Vec::new();
    for g in gens {
        let Some(dg) = g.total_degree() else { continue };
        if dg as u32 > d {
            continue;
        }
        for m in monomials_of_degree(nvars, d - dg as u32) {
            rows.push(dense(&g.mul_term(&m, 1)));
        }
    }
    let base = rank(rows.clone(), p);
    rows.push(dense(f));
    rank(rows, p) == base
}

fn random_form(ctx: PolyContext, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let monos = monomials_of_degree(ctx.nvars, d);
    let p = ctx.characteristic();
    Polynomial::from_terms(
        ctx,
        (0..terms).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), rng.gen_range(1..p))),
    )
}

/// Every S-pair reduces to zero, and the basis is reduced and generates the ideal.
fn basis_conforms(ideal: &Ideal) -> Result<(), String> {
    let gb = ideal.basis();
    let g = gb.generators();
    for (a, ga) in g.iter().enumerate() {
        ensure(ga.leading_coeff() == Some(1), || format!("{ga:?} not monic"))?;
        for (b, gb_) in g.iter().enumerate() {
            if a == b {
                continue;
            }
            let lm = gb_.leading_monomial().unwrap();
            ensure(!ga.terms().iter().any(|(m, _)| lm.divides(m)), || {
                "basis not reduced".into()
            })?;
            if a < b {
                ensure(gb.reduce(&s_polynomial(ga, gb_)).is_zero(), || {
                    "S-pair does not reduce to 0".into()
                })?;
            }
        }
    }
    for f in ideal.generators() {
        ensure(gb.reduce(f).is_zero(), || "generator not reduced to 0".into())?;
    }
    Ok(())
}

// 6. Groebner bases: S-pair criterion on every basis, membership against the
// Macaulay matrix.
fn groebner_conformance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes = [2u64, 3, 5, 7, 101, 1_000_003];
    let (mut members, mut bases) = (0, 0);
    for case in 0..MACAULAY_INSTANCES {
        let p = primes[rng.gen_range(0..primes.len())];
        let nvars = rng.gen_range(1..=3);
        let order = match rng.gen_range(0..3) {
            0 => MonomialOrder::Lex,
            1 => MonomialOrder::Grevlex,
            _ => MonomialOrder::BlockElimination(rng.gen_range(1..=nvars)),
        };
        let ctx = PolyContext::new(nvars, PrimeField::new(p).unwrap(), order);
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let d = rng.gen_range(1..=3);
                random_form(ctx, d, rng.gen_range(1..=3), &mut rng)
            })
            .collect();
        let d = rng.gen_range(1..=6);
        let f = if rng.gen_bool(0.5) {
            let mut f = Polynomial::zero(ctx);
            for g in &gens {
                if let Some(dg) = g.total_degree() {
                    if dg as u32 <= d {
                        let h = random_form(ctx, d - dg as u32, 2, &mut rng);
                        f = &f + &(&h * g);
                    }
                }
            }
            f
        } else {
            random_form(ctx, d, rng.gen_range(1..=4), &mut rng)
        };
        let ideal = Ideal::new(ctx, gens.clone()).unwrap();
        basis_conforms(&ideal).map_err(|e| format!("case {case}: {e}"))?;
        bases += 1;
        let got = ideal.contains(&f);
        let want = macaulay_member(&f, &gens, nvars, p);
        ensure(got == want, || format!("case {case}: membership {got}, matrix {want}"))?;
        members += usize::from(want);
    }
    for ring in corpus_rings() {
        for i in corpus_ideals(&ring) {
            basis_conforms(i.ambient()).map_err(|e| format!("{}: {e}", i.describe()))?;
            bases += 1;
        }
    }
    Ok(format!(
        "{bases} bases pass the S-pair check; {MACAULAY_INSTANCES} memberships agree ({members} members)"
    ))
}

// 7. Frobenius-closedness of I and I^2 for the cubic.
fn powers_scan() -> Outcome {
    let start = Instant::now();
    let opts = ScanOptions::new(4, 1);
    let i7 = RingIdeal::parse(&cubic(7, Assumptions::default()), &["x", "y"]).unwrap();
    let scans = powers_closed_scan(&i7, 2, &opts).unwrap();
    let found: usize = scans.iter().map(|s| s.witnesses.len()).sum();
    ensure(scans.len() == 2 && found == 0, || format!("p=7: {found} witnesses"))?;
    let r2 = cubic(2, Assumptions::default());
    let i2 = RingIdeal::parse(&r2, &["x", "y"]).unwrap();
    let scans = powers_closed_scan(&i2, 2, &opts).unwrap();
    let z2 = r2.parse("z^2").unwrap();
    ensure(
        scans[0].n == 1 && scans[0].witnesses.iter().any(|w| w.element == z2),
        || "p=2: z^2 not among the witnesses at n=1".into(),
    )?;
    within(start, LIMIT_POWERS_SCAN)?;
    Ok(format!(
        "p=7 clean at n=1,2; p=2 has z^2 among {} witnesses at n=1",
        scans[0].witnesses.len()
    ))
}

fn corpus_rings() -> Vec<Arc<QuotientRing>> {
    let mut out = vec![
        Arc::new(
            QuotientRing::polynomial_ring(5, &["x", "y"])
                .unwrap()
                .with_assumptions(equidimensional()),
        ),
        Arc::new(
            QuotientRing::polynomial_ring(7, &["x", "y", "z"])
                .unwrap()
                .with_assumptions(equidimensional()),
        ),
    ];
    out.extend([2, 5, 7].map(|p| cubic(p, equidimensional())));
    out
}

fn corpus_ideals(ring: &Arc<QuotientRing>) -> Vec<RingIdeal> {
    let sets: &[&[&str]] = if ring.nvars() == 2 {
        &[
            &["x", "y"],
            &["x^2", "x*y", "y^2"],
            &["x^2", "y^3"],
            &["x^3", "x*y", "y^4"],
            &["x*y"],
        ]
    } else {
        &[
            &["x", "y"],
            &["x", "y", "z"],
            &["x^2", "y^2", "z^2"],
            &["x*y", "y*z", "x*z"],
            &["x + y", "z"],
            &["x^2", "x*y", "y^2"],
            &["x*y*z"],
            &["x - y", "y^2 + z^2"],
        ]
    };
    sets.iter().map(|g| RingIdeal::parse(ring, g).unwrap()).collect()
}

// 8. Spread, reductions and the sandwich ht <= spread <= dim.
fn spread_and_reductions() -> Outcome {
    let s = Arc::new(QuotientRing::polynomial_ring(5, &["x", "y"]).unwrap());
    let i = RingIdeal::parse(&s, &["x^2", "x*y", "y^2"]).unwrap();
    let l = analytic_spread(&i).unwrap();
    ensure(l == 2, || format!("spread {l}"))?;
    let j = RingIdeal::parse(&s, &["x^2", "y^2"]).unwrap();
    let t = verify_reduction(&j, &i, 6).unwrap();
    ensure(t == Some(1), || format!("reduction exponent {t:?}"))?;

    let mut sandwiches = 0;
    for ring in corpus_rings() {
        let d = krull_dim(&ring).unwrap();
        for i in corpus_ideals(&ring) {
            if i.is_zero_in_ring() || i.is_unit() {
                continue;
            }
            let h = height(&i).unwrap();
            let l = analytic_spread(&i).unwrap();
            ensure(h <= l && l <= d, || {
                format!("{} in {}: h={h} l={l} d={d}", i.describe(), ring.describe())
            })?;
            sandwiches += 1;
        }
    }

    let opts = CheckOptions {
        reduction_trials: 20,
        seed: 11,
        ..Default::default()
    };
    let i = RingIdeal::parse(&s, &["x^3", "x^2*y", "x*y^2", "y^3"]).unwrap();
    let a = serde_json::to_string(&check_reduction(&i, 2, &opts).unwrap()).unwrap();
    let b = serde_json::to_string(&check_reduction(&i, 2, &opts).unwrap()).unwrap();
    ensure(a == b, || "reduction reports differ between runs".into())?;
    ensure(a.contains("VERIFIED-EXACT"), || format!("no reduction found: {a}"))?;
    Ok(format!(
        "spread 2 with reduction at t=1; sandwich holds on {sandwiches} ideals; reduction reports identical"
    ))
}

// 9. The bundled scripts give identical JSON twice and match the golden files.
fn cli_determinism() -> Outcome {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let names = ["fermat_cubic", "fedder_sweep", "monomial_sweep"];
    for name in names {
        let script = root.join("scripts").join(format!("{name}.bsk"));
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_skoda"))
                .arg("run")
                .arg(&script)
                .arg("--no-timing")
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success(), || format!("{name}: exit {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout, || format!("{name}: runs differ"))?;
        let golden =
            std::fs::read(root.join("tests/golden").join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        ensure(a.stdout == golden, || format!("{name}: differs from golden file"))?;
    }
    Ok(format!(
        "{} scripts byte-identical across runs and to golden files",
        names.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Fermat cubic example", fermat_cubic_example),
        ("Fedder sweep", fedder_sweep),
        ("Frobenius closure witness", frobenius_witness),
        ("monomial containment sweep", monomial_sweep),
        ("closure oracle equivalence", closure_oracle),
        ("Groebner conformance", groebner_conformance),
        ("powers closedness scan", powers_scan),
        ("spread and reductions", spread_and_reductions),
        ("CLI determinism", cli_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (idx, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|w| name.contains(w.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {} PASS {name} ({t:.1?}): {msg}", idx + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({t:.1?}): {msg}", idx + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
