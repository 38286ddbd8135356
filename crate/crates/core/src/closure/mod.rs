//! Integral closure. Exact for monomial ideals of a polynomial ring through the
//! Newton polyhedron; elsewhere only certificates are produced and checked.

mod cert;
mod newton;

pub use cert::{pure_power_witness, pure_power_witness_in, verify_integral_cert, IdealPowers, IntegralCert};
pub use newton::{Facet, NewtonPolyhedron};

use crate::error::{Error, Result};
use crate::ideal_ops::{ideal_power, RingIdeal};
use crate::polyarith::{Monomial, Polynomial};

/// Exponent vectors of a monomial ideal of a polynomial ring.
pub fn monomial_exponents(ideal: &RingIdeal) -> Result<Vec<Vec<u32>>> {
    if !ideal.ring().is_polynomial_ring() {
        return Err(Error::NonzeroDefiningIdeal);
    }
    ideal
        .generators()
        .iter()
        .map(|g| {
            if g.is_monomial() {
                Ok(g.leading_monomial().unwrap().exponents().to_vec())
            } else {
                Err(Error::NotMonomial(ideal.ring().fmt_poly(g)))
            }
        })
        .collect()
}

pub fn newton_polyhedron(ideal: &RingIdeal) -> Result<NewtonPolyhedron> {
    let exps = monomial_exponents(ideal)?;
    if exps.is_empty() {
        return Err(Error::InvalidArgument("the zero ideal has no Newton polyhedron".into()));
    }
    Ok(NewtonPolyhedron::new(exps))
}

fn monomial_ideal(ideal: &RingIdeal, points: Vec<Vec<u32>>) -> Result<RingIdeal> {
    let ctx = ideal.ring().ctx();
    let gens = points
        .into_iter()
        .map(|v| Polynomial::term(ctx, Monomial::from_exponents(&v), 1))
        .collect();
    RingIdeal::new(ideal.ring().clone(), gens)
}

/// Integral closure of a monomial ideal: the lattice points of its Newton
/// polyhedron, by minimal generators.
pub fn monomial_integral_closure(ideal: &RingIdeal) -> Result<RingIdeal> {
    let np = newton_polyhedron(ideal)?;
    monomial_ideal(ideal, np.minimal_points_scaled(1))
}

/// Integral closure of `I^k` for a monomial ideal `I`.
pub fn monomial_closure_of_power(ideal: &RingIdeal, k: u32) -> Result<RingIdeal> {
    let np = newton_polyhedron(ideal)?;
    monomial_ideal(ideal, np.minimal_points_scaled(k))
}

/// Outcome of the exact test of `closure(I^k) ⊆ I^n`.
#[derive(Clone, Debug)]
pub struct ExactContainment {
    pub holds: bool,
    /// A minimal generator of `closure(I^k)` outside `I^n`.
    pub witness: Option<Monomial>,
    pub closure_generators: usize,
}

/// Decides `closure(I^k) ⊆ I^n` for a monomial ideal of a polynomial ring.
pub fn check_containment_exact(k: u32, n: u32, ideal: &RingIdeal) -> Result<ExactContainment> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument("exponents must be positive".into()));
    }
    let np = newton_polyhedron(ideal)?;
    let points = np.minimal_points_scaled(k);
    let target = ideal_power(ideal, n)?;
    let target = monomial_exponents(&target)?;
    let witness = points
        .iter()
        .find(|v| !target.iter().any(|t| t.iter().zip(v.iter()).all(|(a, b)| a <= b)))
        .map(|v| Monomial::from_exponents(v));
    Ok(ExactContainment {
        holds: witness.is_none(),
        witness,
        closure_generators: points.len(),
    })
}
