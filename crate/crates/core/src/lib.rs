//! Exact commutative algebra in prime characteristic for uniform
//! Briançon–Skoda containments `integral closure of I^(k+n) ⊆ I^n`.
//!
//! Layers, bottom up:
//!
//! * [`polyarith`]: prime fields, monomials, orders, sparse polynomials;
//! * [`groebner`]: Buchberger, normal forms, cached ideal membership;
//! * [`ideal_ops`]: quotient rings, powers, bracket powers, colon,
//!   intersection, elimination, dimension and height;
//! * [`frobenius`]: bounded Frobenius-closure membership, closedness scans and
//!   Fedder's F-purity test;
//! * [`closure`]: integral-dependence certificates and exact integral closure
//!   of monomial ideals through Newton polyhedra;
//! * [`spread`]: analytic spread through the fiber cone, reductions;
//! * [`harness`]: containment checks with exact, sampled or refuted verdicts.
//!
//! Rings are graded and ideals homogeneous, so statements about the local ring
//! at the irrelevant ideal are decided by graded Groebner computations.

pub mod closure;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod harness;
pub mod ideal_ops;
pub mod par;
pub mod polyarith;
pub mod spread;

pub use error::{Error, Result};
