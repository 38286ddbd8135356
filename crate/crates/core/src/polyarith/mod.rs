//! Exact arithmetic: prime-field scalars, monomials, monomial orders and sparse
//! multivariate polynomials.

mod field;
mod monomial;
mod order;
mod parse;
mod polynomial;

pub use field::{is_prime, FieldElement, PrimeField};
pub use monomial::{monomials_of_degree, Exponents, Monomial};
pub use order::{order_compare, MonomialOrder};
pub use parse::{parse_int_polynomial, parse_polynomial, IntPolynomial};
pub use polynomial::{frobenius_power, poly_mul, PolyContext, Polynomial};
