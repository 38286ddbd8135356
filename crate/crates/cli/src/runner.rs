use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;
use skoda_core::harness::{
    check_fedder, check_frobenius_member, check_frobenius_scan, check_powers_closed, check_probe, check_reduction,
    check_spread, check_thm_cm, check_thm_fpure, check_thm_param, multi_prime, CheckOptions, CheckReport, InstanceSpec,
    PrimeRun,
};
use skoda_core::ideal_ops::{Assumptions, RingIdeal};
use skoda_core::polyarith::IntPolynomial;
use skoda_core::{Error, Result};

use crate::ast::{Assumption, CheckCmd, CheckName, ParamValue, Script, Statement};
use crate::pretty;

pub const SCHEMA: u32 = 1;

/// Command-line bounds; per-check parameters override them.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub opts: CheckOptions,
    pub primes: Option<Vec<u64>>,
    pub timing: bool,
}

/// Verdict of one prime in a multi-prime check.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeSummary {
    pub prime: u64,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_pure: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: usize,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<Vec<PrimeRun>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Vec<PrimeSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Entry {
    fn reports(&self) -> impl Iterator<Item = &CheckReport> {
        self.report
            .iter()
            .chain(self.runs.iter().flatten().filter_map(|r| r.report.as_ref()))
    }

    pub fn contradicts_theorem(&self) -> bool {
        self.reports().any(|r| r.contradicts_theorem)
    }

    /// One line for terminal output.
    pub fn headline(&self) -> String {
        let outcome = if let Some(e) = &self.error {
            format!("error: {e}")
        } else if let Some(r) = &self.report {
            r.verdict.to_string()
        } else {
            let parts: Vec<String> = self
                .summary
                .iter()
                .flatten()
                .map(|s| format!("p={}: {}", s.prime, s.outcome))
                .collect();
            parts.join(", ")
        };
        let flag = if self.contradicts_theorem() {
            " (contradicts a theorem instance)"
        } else {
            ""
        };
        format!("[{}] {} -> {outcome}{flag}", self.id, self.statement)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub checks_ms: Vec<f64>,
}

/// The whole JSON document. Timings are the only nondeterministic part and are
/// omitted unless requested.
#[derive(Clone, Debug, Serialize)]
pub struct Output {
    pub schema: u32,
    pub reports: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Output {
    /// 1 when a refutation contradicts a theorem instance, else 0.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.reports.iter().any(Entry::contradicts_theorem))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

struct RingEnv {
    prime: u64,
    vars: Vec<String>,
    relations: Vec<IntPolynomial>,
    assumptions: Assumptions,
}

struct Env {
    rings: HashMap<String, RingEnv>,
    ideals: HashMap<String, (String, Vec<IntPolynomial>)>,
}

fn assume(a: &mut Assumptions, which: Assumption) {
    match which {
        Assumption::FInjective => a.f_injective = true,
        Assumption::CohenMacaulay => a.cohen_macaulay = true,
        Assumption::Equidimensional => a.equidimensional = true,
        Assumption::ParamFrobeniusClosed => a.param_frobenius_closed = true,
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidArgument(msg)
}

fn single(cmd: &CheckCmd, key: &str) -> Result<Option<u64>> {
    match cmd.param(key) {
        None => Ok(None),
        Some(ParamValue::Int(a)) => Ok(Some(*a)),
        Some(_) => Err(bad(format!("parameter `{key}` takes a single integer"))),
    }
}

fn single_u32(cmd: &CheckCmd, key: &str) -> Result<Option<u32>> {
    single(cmd, key)?
        .map(|v| u32::try_from(v).map_err(|_| bad(format!("parameter `{key}` is too large"))))
        .transpose()
}

fn ints(cmd: &CheckCmd, key: &str) -> Result<Option<Vec<u64>>> {
    match cmd.param(key) {
        None => Ok(None),
        Some(v) => v
            .ints()
            .map(Some)
            .ok_or_else(|| bad(format!("parameter `{key}` takes integers"))),
    }
}

fn options(cmd: &CheckCmd, base: &CheckOptions) -> Result<CheckOptions> {
    let mut o = *base;
    if let Some(v) = single(cmd, "degree")? {
        o.degree_bound = v;
    }
    if let Some(v) = single_u32(cmd, "emax")? {
        o.e_max = v;
    }
    if let Some(v) = single_u32(cmd, "mmax")? {
        o.m_max = v;
    }
    if let Some(v) = single_u32(cmd, "tmax")? {
        o.t_max = v;
    }
    if let Some(v) = single(cmd, "samples")? {
        o.samples = v as usize;
    }
    if let Some(v) = single(cmd, "seed")? {
        o.seed = v;
    }
    if let Some(v) = single(cmd, "trials")? {
        o.reduction_trials = v as usize;
    }
    Ok(o)
}

/// The check as a function of the ideal modulo one prime.
type Runner = Box<dyn Fn(&RingIdeal) -> Result<CheckReport> + Send + Sync>;

fn runner(cmd: &CheckCmd, opts: CheckOptions) -> Result<Runner> {
    let n_range = || -> Result<Vec<u32>> {
        let ns = ints(cmd, "n")?.unwrap_or_else(|| vec![1, 2, 3]);
        ns.into_iter()
            .map(|n| match u32::try_from(n) {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(bad(format!("`n={n}` must be a positive exponent"))),
            })
            .collect()
    };
    Ok(match cmd.check {
        CheckName::BsFpure => {
            let ns = n_range()?;
            Box::new(move |i| check_thm_fpure(i, &ns, &opts))
        }
        CheckName::BsCm => {
            let ns = n_range()?;
            Box::new(move |i| check_thm_cm(i, &ns, &opts))
        }
        CheckName::BsParam => Box::new(move |i| check_thm_param(i, &opts)),
        CheckName::Containment => {
            let k = single_u32(cmd, "k")?.ok_or_else(|| bad("`containment` needs `k`".into()))?;
            let n = single_u32(cmd, "n")?.unwrap_or(1);
            Box::new(move |i| check_probe(i, k, n, &opts))
        }
        CheckName::PowersClosed => {
            let n = single_u32(cmd, "n")?.unwrap_or(2);
            Box::new(move |i| check_powers_closed(i, n, &opts))
        }
        CheckName::FrobeniusClosed => Box::new(move |i| check_frobenius_scan(i, &opts)),
        CheckName::FrobeniusMember => {
            let r = match cmd.param("r") {
                Some(ParamValue::Polys(ps)) if ps.len() == 1 => ps[0].clone(),
                _ => return Err(bad("`r` takes one polynomial in parentheses".into())),
            };
            Box::new(move |i| check_frobenius_member(i, &r.to_polynomial(i.ring().ctx()), &opts))
        }
        CheckName::Fedder => Box::new(check_fedder),
        CheckName::Spread => Box::new(move |i| check_spread(i, &opts)),
        CheckName::Reduction => {
            let t = single(cmd, "target")?.ok_or_else(|| bad("`reduction` needs `target`".into()))?;
            Box::new(move |i| check_reduction(i, t as usize, &opts))
        }
    })
}

impl Env {
    /// The ring of the check's target and the ideal to test: the named ideal, or
    /// the homogeneous maximal ideal when the target is a ring.
    fn spec(&self, cmd: &CheckCmd) -> (&RingEnv, InstanceSpec) {
        let (ring, gens) = match self.ideals.get(&cmd.target) {
            Some((ring, gens)) => (&self.rings[ring], gens.clone()),
            None => {
                let r = &self.rings[&cmd.target];
                let n = r.vars.len();
                (r, (0..n).map(|i| IntPolynomial::var(n, i)).collect())
            }
        };
        let spec = InstanceSpec {
            vars: ring.vars.clone(),
            weights: vec![1; ring.vars.len()],
            relations: ring.relations.clone(),
            generators: gens,
            assumptions: ring.assumptions,
        };
        (ring, spec)
    }

    fn check(&self, id: usize, cmd: &CheckCmd, cfg: &RunConfig) -> Entry {
        let (ring, spec) = self.spec(cmd);
        let mut entry = Entry {
            id,
            statement: pretty::check(cmd, &ring.vars),
            report: None,
            runs: None,
            summary: None,
            error: None,
        };
        let primes = match ints(cmd, "primes") {
            Ok(p) => p.or_else(|| cfg.primes.clone()),
            Err(e) => {
                entry.error = Some(e.to_string());
                return entry;
            }
        };
        let run = match options(cmd, &cfg.opts).and_then(|o| runner(cmd, o)) {
            Ok(r) => r,
            Err(e) => {
                entry.error = Some(e.to_string());
                return entry;
            }
        };
        match primes {
            Some(primes) => {
                let runs = multi_prime(&spec, &primes, run);
                entry.summary = Some(
                    runs.iter()
                        .map(|r| PrimeSummary {
                            prime: r.prime,
                            outcome: match (&r.report, &r.skipped) {
                                (Some(rep), _) => rep.verdict.to_string(),
                                (None, Some(_)) => "skipped".into(),
                                (None, None) => "error".into(),
                            },
                            f_pure: r.report.as_ref().and_then(|rep| rep.invariants.f_pure),
                        })
                        .collect(),
                );
                entry.runs = Some(runs);
            }
            None => match spec.reduce(ring.prime) {
                Ok(Ok(ideal)) => match run(&ideal) {
                    Ok(rep) => entry.report = Some(rep),
                    Err(e) => entry.error = Some(e.to_string()),
                },
                Ok(Err(reason)) => entry.error = Some(reason),
                Err(e) => entry.error = Some(e.to_string()),
            },
        }
        entry
    }
}

/// Executes the statements in order; each check yields one entry.
pub fn run(script: &Script, cfg: &RunConfig) -> Output {
    let start = Instant::now();
    let mut env = Env {
        rings: HashMap::new(),
        ideals: HashMap::new(),
    };
    let mut reports = Vec::new();
    let mut checks_ms = Vec::new();
    for st in &script.statements {
        match st {
            Statement::Ring(r) => {
                env.rings.insert(
                    r.name.clone(),
                    RingEnv {
                        prime: r.prime,
                        vars: r.vars.clone(),
                        relations: r.relations.clone(),
                        assumptions: Assumptions::default(),
                    },
                );
            }
            Statement::Ideal(i) => {
                env.ideals
                    .insert(i.name.clone(), (i.ring.clone(), i.generators.clone()));
            }
            Statement::Assume { ring, assumption } => {
                if let Some(r) = env.rings.get_mut(ring) {
                    assume(&mut r.assumptions, *assumption);
                }
            }
            Statement::Check(cmd) => {
                let t = Instant::now();
                reports.push(env.check(reports.len() + 1, cmd, cfg));
                checks_ms.push(t.elapsed().as_secs_f64() * 1e3);
            }
        }
    }
    Output {
        schema: SCHEMA,
        reports,
        timing: cfg.timing.then(|| Timing {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            checks_ms,
        }),
    }
}
