//! Buchberger's algorithm, normal forms and ideal membership.

mod buchberger;
mod ideal;

pub use buchberger::{buchberger, buchberger_with_budget, normal_form, s_polynomial, GroebnerBasis};
pub use ideal::{ideal_contains, ideal_member, Ideal};
