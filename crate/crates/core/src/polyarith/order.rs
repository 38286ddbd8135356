use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// Monomial orders with `x_1 > x_2 > ... > x_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Any monomial involving the front block beats every monomial free of it.
    BlockElimination(usize),
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::BlockElimination(k) => write!(f, "block({k})"),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // the larger monomial has the smaller exponent in the last differing variable
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compares monomials of equal arity. Arity is checked only in debug builds; see
    /// [`MonomialOrder::try_compare`] for the checked form.
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::ArityMismatch {
                left: a.nvars(),
                right: b.nvars(),
            });
        }
        Ok(self.compare(a, b))
    }
}

/// Free-function form of [`MonomialOrder::try_compare`].
pub fn order_compare(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    order.try_compare(a, b)
}
