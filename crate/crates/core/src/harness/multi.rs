use std::sync::Arc;

use serde::Serialize;

use super::CheckReport;
use crate::error::Result;
use crate::ideal_ops::{Assumptions, QuotientRing, RingIdeal};
use crate::par;
use crate::polyarith::{IntPolynomial, MonomialOrder, PolyContext, PrimeField};

/// A ring and ideal with integer coefficients, to be read modulo several primes.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub relations: Vec<IntPolynomial>,
    pub generators: Vec<IntPolynomial>,
    pub assumptions: Assumptions,
}

impl InstanceSpec {
    /// The instance modulo `p`, or `Ok(None)` with a reason when `p` divides the
    /// leading coefficient of a relation or generator.
    pub fn reduce(&self, p: u64) -> Result<std::result::Result<RingIdeal, String>> {
        let field = PrimeField::new(p)?;
        let ctx = PolyContext::new(self.vars.len(), field, MonomialOrder::Grevlex);
        for f in self.relations.iter().chain(&self.generators) {
            if let Some(c) = f.leading_coefficient(ctx) {
                if c.rem_euclid(p as i128) == 0 {
                    return Ok(Err(format!(
                        "{p} divides the leading coefficient of {}",
                        f.fmt_with(&self.vars)
                    )));
                }
            }
        }
        let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let rels = self.relations.iter().map(|f| f.to_polynomial(ctx)).collect();
        let ring = QuotientRing::from_polynomials(field, &names, self.weights.clone(), rels)?
            .with_assumptions(self.assumptions);
        let gens = self.generators.iter().map(|f| f.to_polynomial(ctx)).collect();
        RingIdeal::new(Arc::new(ring), gens).map(Ok)
    }
}

/// One prime of a multi-prime run.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeRun {
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Runs `check` on the instance modulo each prime, in input order.
pub fn multi_prime<F>(spec: &InstanceSpec, primes: &[u64], check: F) -> Vec<PrimeRun>
where
    F: Fn(&RingIdeal) -> Result<CheckReport> + Sync + Send,
{
    par::map(primes, |&p| {
        let mut run = PrimeRun {
            prime: p,
            report: None,
            skipped: None,
            error: None,
        };
        match spec.reduce(p) {
            Err(e) => run.error = Some(e.to_string()),
            Ok(Err(reason)) => run.skipped = Some(reason),
            Ok(Ok(ideal)) => match check(&ideal) {
                Ok(r) => run.report = Some(r),
                Err(e) => run.error = Some(e.to_string()),
            },
        }
        run
    })
}
