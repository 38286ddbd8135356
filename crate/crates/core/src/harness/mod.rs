//! Containment checks with explicit verdicts.
//!
//! Each check turns one family of containments `closure(I^k) ⊆ I^n` (or a
//! Frobenius-closure statement) into a [`CheckReport`]. Monomial ideals of a
//! polynomial ring are decided exactly; everything else is sampled within stated
//! bounds, and a refutation always carries a re-checkable witness.

mod checks;
mod containment;
mod multi;
mod search;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::closure::IntegralCert;
use crate::ideal_ops::{QuotientRing, RingIdeal};
use crate::polyarith::Polynomial;

pub use checks::{
    check_fedder, check_frobenius_member, check_frobenius_scan, check_powers_closed, check_probe, check_reduction,
    check_spread, check_thm_cm, check_thm_fpure, check_thm_param,
};
pub use containment::{check_containment, containment_candidates, verify_refutation};
pub use multi::{multi_prime, InstanceSpec, PrimeRun};
pub use search::{search_counterexamples, SearchCandidate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "VERIFIED-EXACT")]
    VerifiedExact,
    #[serde(rename = "VERIFIED-SAMPLED")]
    VerifiedSampled,
    #[serde(rename = "INCONCLUSIVE-AT-BOUND")]
    InconclusiveAtBound,
    #[serde(rename = "REFUTED")]
    Refuted,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::VerifiedExact => "VERIFIED-EXACT",
            Self::VerifiedSampled => "VERIFIED-SAMPLED",
            Self::InconclusiveAtBound => "INCONCLUSIVE-AT-BOUND",
            Self::Refuted => "REFUTED",
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Self::VerifiedExact | Self::VerifiedSampled)
    }

    /// The least conclusive of a set of verdicts, in the order
    /// exact < sampled < inconclusive < refuted.
    pub fn worst(verdicts: impl IntoIterator<Item = Verdict>) -> Option<Verdict> {
        verdicts.into_iter().max()
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Search bounds shared by all checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckOptions {
    /// Largest degree of sampled elements.
    pub degree_bound: u64,
    /// Largest `m` in pure-power certificates `r^m ∈ I^{km}`.
    pub m_max: u32,
    /// Largest Frobenius exponent.
    pub e_max: u32,
    /// Largest `t` in reduction checks.
    pub t_max: u32,
    /// Random combinations drawn per degree.
    pub samples: usize,
    pub seed: u64,
    /// S-pair budget for the analytic spread computation.
    pub spread_budget: usize,
    /// Trials for random minimal reductions.
    pub reduction_trials: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            degree_bound: 8,
            m_max: 4,
            e_max: 2,
            t_max: 6,
            samples: 100,
            seed: 0,
            spread_budget: 20_000,
            reduction_trials: 50,
        }
    }
}

/// `m` and the coefficients `a_1..a_m` of an integral dependence equation.
#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub m: u32,
    pub coefficients: Vec<String>,
}

/// An element of `closure(I^k)` outside `I^n`.
#[derive(Clone, Debug, Serialize)]
pub struct Refutation {
    pub element: String,
    /// `pure_power` or `newton_polyhedron`.
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertReport>,
    #[serde(skip)]
    pub raw_element: Polynomial,
    #[serde(skip)]
    pub raw_certificate: Option<IntegralCert>,
}

/// An element found in `I^F \ I`.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub element: String,
    pub e: u32,
    pub q: u64,
}

/// One containment `closure(I^k) ⊆ I^n`.
#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    /// Which exponent formula produced `k`.
    pub role: String,
    pub k: u32,
    pub n: u32,
    /// Whether a theorem asserts the containment under hypotheses that hold here.
    pub claimed: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Refutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_tested: Option<usize>,
}

/// Invariants computed for a report; absent entries were not needed or failed.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Invariants {
    pub generators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_spread: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_pure: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub ring: String,
    pub ideal: String,
    pub characteristic: u64,
    pub assumptions: Vec<&'static str>,
    pub invariants: Invariants,
    /// The bound under which sampled or bounded verdicts hold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    pub instances: Vec<Instance>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub frobenius_witnesses: Vec<FrobeniusReport>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// A refutation of a containment some theorem asserts here.
    pub contradicts_theorem: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub(crate) fn new(check: &str, ideal: &RingIdeal) -> Self {
        let ring: &QuotientRing = ideal.ring();
        Self {
            check: check.to_string(),
            ring: ring.describe(),
            ideal: ideal.describe(),
            characteristic: ring.characteristic(),
            assumptions: ring.assumptions().names(),
            invariants: Invariants {
                generators: ideal.generators().len(),
                ..Default::default()
            },
            bound: None,
            instances: Vec::new(),
            frobenius_witnesses: Vec::new(),
            details: BTreeMap::new(),
            verdict: Verdict::VerifiedExact,
            contradicts_theorem: false,
            notes: Vec::new(),
        }
    }

    /// Sets the aggregate verdict and the contradiction flag from the instances.
    pub(crate) fn finish_instances(&mut self) {
        self.verdict = Verdict::worst(self.instances.iter().map(|i| i.verdict)).unwrap_or(Verdict::VerifiedExact);
        self.contradicts_theorem = self
            .instances
            .iter()
            .any(|i| i.claimed && i.verdict == Verdict::Refuted);
    }

    pub fn instance(&self, k: u32, n: u32) -> Option<&Instance> {
        self.instances.iter().find(|i| i.k == k && i.n == n)
    }
}
