//! Textual polynomial syntax: `x^3 + 2*x*y^2 - (x + y)^2 + 1`.
//!
//! Expressions are evaluated over the integers first so the same text can be read
//! modulo several primes.

use std::collections::BTreeMap;

use super::{Monomial, PolyContext, Polynomial};
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, 1);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, i128)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            let slot = p.terms.entry(e).or_insert(0);
            *slot += c;
        }
        p.terms.retain(|_, c| *c != 0);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, i128)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    fn checked_add(&self, other: &Self, sign: i128) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert(0);
            *slot = c
                .checked_mul(sign)
                .and_then(|c| slot.checked_add(c))
                .ok_or_else(overflow)?;
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow))
                    .collect::<Result<Vec<_>>>()?;
                let prod = ca.checked_mul(*cb).ok_or_else(overflow)?;
                let slot = out.terms.entry(e).or_insert(0);
                *slot = slot.checked_add(prod).ok_or_else(overflow)?;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    fn checked_pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(self.nvars, 1);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Reduces coefficients modulo the characteristic of `ctx`.
    pub fn to_polynomial(&self, ctx: PolyContext) -> Polynomial {
        assert_eq!(ctx.nvars, self.nvars);
        Polynomial::from_terms(
            ctx,
            self.terms
                .iter()
                .map(|(e, c)| (Monomial::from_exponents(e), ctx.field.from_i128(*c))),
        )
    }

    /// Integer coefficient of the leading term under the order of `ctx`.
    pub fn leading_coefficient(&self, ctx: PolyContext) -> Option<i128> {
        self.terms
            .iter()
            .max_by(|a, b| {
                ctx.order
                    .compare(&Monomial::from_exponents(a.0), &Monomial::from_exponents(b.0))
            })
            .map(|(_, c)| *c)
    }

    /// Canonical text: terms in descending lexicographic exponent order.
    pub fn fmt_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, &c)) in self.terms.iter().rev().enumerate() {
            let mono = Monomial::from_exponents(e);
            let neg = c < 0;
            let a = c.unsigned_abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_one(), a) {
                (true, a) => s.push_str(&a.to_string()),
                (false, 1) => s.push_str(&mono.fmt_with(names)),
                (false, a) => {
                    s.push_str(&a.to_string());
                    s.push('*');
                    s.push_str(&mono.fmt_with(names));
                }
            }
        }
        s
    }
}

fn overflow() -> Error {
    Error::InvalidArgument("integer coefficient overflow".into())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = acc.checked_add(&rhs, if c == b'+' { 1 } else { -1 })?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.unary()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.checked_mul(&rhs)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let inner = self.unary()?;
                IntPolynomial::zero(self.vars.len()).checked_add(&inner, -1)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPolynomial> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let k = self.integer()?;
            let k = u32::try_from(k).or_else(|_| self.err(at, "exponent too large"))?;
            if base.terms.len() > 1 && k > 64 {
                return self.err(at, "exponent too large for a non-monomial base");
            }
            if base.terms.len() <= 1 {
                // monomial powers are exponent scaling
                let mut out = IntPolynomial::zero(base.nvars);
                for (e, c) in &base.terms {
                    let e = e
                        .iter()
                        .map(|x| x.checked_mul(k).ok_or(Error::ExponentOverflow))
                        .collect::<Result<Vec<_>>>()?;
                    let c = c.checked_pow(k).ok_or_else(overflow)?;
                    out.terms.insert(e, c);
                }
                if base.terms.is_empty() && k == 0 {
                    return Ok(IntPolynomial::constant(base.nvars, 1));
                }
                return Ok(out);
            }
            return base.checked_pow(k);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i128> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<i128>()
            .or_else(|_| self.err(start, "integer literal too large"))
    }

    fn atom(&mut self) -> Result<IntPolynomial> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err(open, "unclosed parenthesis"),
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPolynomial::constant(n, self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(IntPolynomial::var(n, i)),
                    None => self.err(start, format!("unknown variable `{name}`")),
                }
            }
            Some(c) => self.err(self.pos, format!("unexpected character `{}`", c as char)),
            None => self.err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses a polynomial with integer coefficients over the named variables.
pub fn parse_int_polynomial(text: &str, vars: &[&str]) -> Result<IntPolynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected trailing `{}`", c as char));
    }
    Ok(e)
}

/// Parses and reduces modulo the characteristic of `ctx`.
pub fn parse_polynomial(text: &str, vars: &[&str], ctx: PolyContext) -> Result<Polynomial> {
    if vars.len() != ctx.nvars {
        return Err(Error::ArityMismatch {
            left: vars.len(),
            right: ctx.nvars,
        });
    }
    Ok(parse_int_polynomial(text, vars)?.to_polynomial(ctx))
}
