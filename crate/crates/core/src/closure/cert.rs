use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::ideal_ops::{ideal_power, RingIdeal};
use crate::polyarith::Polynomial;

/// `r^m + a_1 r^{m-1} + .. + a_m = 0` in `R` with `a_i ∈ I^i`.
#[derive(Clone, Debug)]
pub struct IntegralCert {
    pub element: Polynomial,
    pub m: u32,
    pub coeffs: Vec<Polynomial>,
}

impl IntegralCert {
    /// The equation `T^m - r^m`.
    pub fn pure_power(r: &Polynomial, m: u32) -> Result<Self> {
        let zero = Polynomial::zero(r.ctx());
        let mut coeffs = vec![zero; m as usize];
        coeffs[m as usize - 1] = -&r.pow(m as u64)?;
        Ok(Self {
            element: r.clone(),
            m,
            coeffs,
        })
    }

    /// Whether only the constant coefficient is nonzero.
    pub fn is_pure_power(&self) -> bool {
        self.coeffs.iter().rev().skip(1).all(|a| a.is_zero())
    }
}

/// Checks the equation modulo `J` and each `a_i ∈ I^i + J`, computing the powers of
/// `I` from scratch.
pub fn verify_integral_cert(cert: &IntegralCert, ideal: &RingIdeal) -> Result<bool> {
    if cert.m == 0 || cert.coeffs.len() != cert.m as usize {
        return Err(Error::MalformedCertificate(format!(
            "degree {} with {} coefficients",
            cert.m,
            cert.coeffs.len()
        )));
    }
    let ring = ideal.ring();
    let ctx = ring.ctx();
    let r = &cert.element;
    for a in cert.coeffs.iter().chain(std::iter::once(r)) {
        ctx.check(&a.ctx().with_order(ctx.order))?;
    }
    let m = cert.m as usize;
    let mut powers = vec![Polynomial::one(ctx)];
    for _ in 0..m {
        powers.push(powers.last().unwrap().try_mul(r)?);
    }
    let mut lhs = powers[m].clone();
    for (i, a) in cert.coeffs.iter().enumerate() {
        lhs = lhs.try_add(&a.try_mul(&powers[m - i - 1])?)?;
    }
    if !ring.defining_ideal().try_contains(&lhs)? {
        return Ok(false);
    }
    for (i, a) in cert.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let power = ideal_power(ideal, i as u32 + 1)?;
        if !power.contains(a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lazily computed powers `I^j`, each with its own cached Groebner basis.
pub struct IdealPowers {
    base: RingIdeal,
    powers: Mutex<Vec<RingIdeal>>,
}

impl IdealPowers {
    pub fn new(base: RingIdeal) -> Self {
        let first = base.clone();
        Self {
            base,
            powers: Mutex::new(vec![first]),
        }
    }

    pub fn base(&self) -> &RingIdeal {
        &self.base
    }

    /// `I^j` for `j ≥ 1`.
    pub fn get(&self, j: u32) -> Result<RingIdeal> {
        if j == 0 {
            return Err(Error::InvalidArgument("power index must be positive".into()));
        }
        let mut powers = self.powers.lock().unwrap();
        while powers.len() < j as usize {
            let next = powers.last().unwrap().product(&self.base);
            powers.push(compact(next)?);
        }
        Ok(powers[j as usize - 1].clone())
    }
}

/// Replaces generators of a power by the reduced basis of the ideal they generate
/// (without `J`) when that is shorter.
fn compact(ideal: RingIdeal) -> Result<RingIdeal> {
    if ideal.generators().len() < 8 {
        return Ok(ideal);
    }
    let ring = ideal.ring().clone();
    let plain = crate::groebner::Ideal::new(ring.ctx(), ideal.generators().iter().cloned())?;
    let gb = plain.basis();
    if gb.len() < ideal.generators().len() {
        return RingIdeal::new(ring, gb.generators().to_vec());
    }
    Ok(ideal)
}

/// Smallest `m ≤ m_max` with `r^m ∈ I^m + J`, as a pure-power certificate.
pub fn pure_power_witness(r: &Polynomial, ideal: &RingIdeal, m_max: u32) -> Result<Option<IntegralCert>> {
    pure_power_witness_in(r, &IdealPowers::new(ideal.clone()), 1, m_max)
}

/// Smallest `m ≤ m_max` with `r^m ∈ (I^k)^m + J`, reusing cached powers of `I`.
/// The certificate is over `I^k`.
pub fn pure_power_witness_in(r: &Polynomial, powers: &IdealPowers, k: u32, m_max: u32) -> Result<Option<IntegralCert>> {
    let mut rm = Polynomial::one(r.ctx());
    for m in 1..=m_max {
        rm = rm.try_mul(r)?;
        let target = powers.get(k * m)?;
        if target.ambient().try_contains(&rm)? {
            return IntegralCert::pure_power(r, m).map(Some);
        }
    }
    Ok(None)
}
