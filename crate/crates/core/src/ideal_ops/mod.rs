//! Quotient rings `F_p[x]/J` and ideal arithmetic in them: powers, bracket
//! powers, colon, intersection, elimination, dimension and height.
//!
//! Everything about `R = S/J` is computed on lifts `I + J` in `S`.

mod ops;
mod ring;

pub use ops::{
    bracket_power, colon, colon_by_element, eliminate, height, ideal_power, intersect, intersect_ambient, krull_dim,
    quotient_dimension, standard_monomials, Colon,
};
pub use ring::{Assumptions, QuotientRing, RingIdeal};
