use std::collections::HashMap;

use skoda_core::polyarith::{parse_int_polynomial, IntPolynomial, MonomialOrder, PolyContext, PrimeField};
use skoda_core::Error as CoreError;

use crate::ast::{Assumption, CheckCmd, CheckName, IdealDecl, ParamValue, RingDecl, Script, Statement, COMMON_PARAMS};
use crate::lexer::{position, tokenize, ParseError, Token, TokenKind};

struct RingInfo {
    prime: u64,
    vars: Vec<String>,
}

struct RawPoly {
    token: usize,
    start: usize,
    end: usize,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    rings: HashMap<String, RingInfo>,
    ideals: HashMap<String, String>,
}

/// Parses a script, resolving names as they are declared.
pub fn parse(src: &str) -> Result<Script, ParseError> {
    let mut p = Parser {
        src,
        toks: tokenize(src)?,
        pos: 0,
        rings: HashMap::new(),
        ideals: HashMap::new(),
    };
    let mut statements = Vec::new();
    while p.pos < p.toks.len() {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&TokenKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn error_at(&self, idx: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = match self.toks.get(idx) {
            Some(t) => (t.line, t.col),
            None => position(self.src, self.src.len()),
        };
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(k) => k.to_string(),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<(), ParseError> {
        if self.peek() == Some(&kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {kind}, found {}", self.found())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(TokenKind::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}, found {}", self.found()))),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(TokenKind::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error(format!("expected an integer, found {}", self.found()))),
        }
    }

    fn fresh_name(&mut self) -> Result<String, ParseError> {
        let at = self.pos;
        let name = self.ident("a name")?;
        if self.rings.contains_key(&name) || self.ideals.contains_key(&name) {
            return Err(self.error_at(at, format!("`{name}` is already defined")));
        }
        Ok(name)
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let at = self.pos;
        let kw = self.ident("a statement")?;
        let stmt = match kw.as_str() {
            "ring" => self.ring()?,
            "ideal" => self.ideal()?,
            "assume" => self.assume()?,
            "check" => self.check()?,
            other => {
                return Err(self.error_at(
                    at,
                    format!("unknown statement `{other}`; expected ring, ideal, assume or check"),
                ))
            }
        };
        self.expect(TokenKind::Semi)?;
        Ok(stmt)
    }

    fn ring(&mut self) -> Result<Statement, ParseError> {
        let name = self.fresh_name()?;
        self.expect(TokenKind::Eq)?;
        let at = self.pos;
        let field = self.ident("a field `F_<p>`")?;
        let prime = field
            .strip_prefix("F_")
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| self.error_at(at, format!("expected a field `F_<p>`, found `{field}`")))?;
        PrimeField::new(prime).map_err(|e| self.error_at(at, e.to_string()))?;
        self.expect(TokenKind::LBracket)?;
        let mut vars = Vec::new();
        loop {
            let at = self.pos;
            let v = self.ident("a variable")?;
            if vars.contains(&v) {
                return Err(self.error_at(at, format!("variable `{v}` repeated")));
            }
            vars.push(v);
            if self.peek() == Some(&TokenKind::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(TokenKind::RBracket)?;
        let raw = if self.peek() == Some(&TokenKind::Slash) {
            self.pos += 1;
            self.raw_polys()?
        } else {
            Vec::new()
        };
        let relations = raw
            .iter()
            .map(|r| self.resolve(r, prime, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        self.rings.insert(
            name.clone(),
            RingInfo {
                prime,
                vars: vars.clone(),
            },
        );
        Ok(Statement::Ring(RingDecl {
            name,
            prime,
            vars,
            relations,
        }))
    }

    /// `( poly, .. )` as source spans, resolved once the ring is known.
    fn raw_polys(&mut self) -> Result<Vec<RawPoly>, ParseError> {
        self.expect(TokenKind::LParen)?;
        let mut out = Vec::new();
        loop {
            out.push(self.raw_poly()?);
            match self.peek() {
                Some(TokenKind::Comma) => self.pos += 1,
                Some(TokenKind::RParen) => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.error(format!("expected `,` or `)`, found {}", self.found()))),
            }
        }
    }

    fn raw_poly(&mut self) -> Result<RawPoly, ParseError> {
        let first = self.pos;
        let mut depth = 0usize;
        while let Some(k) = self.peek() {
            match k {
                TokenKind::LParen => depth += 1,
                TokenKind::RParen if depth == 0 => break,
                TokenKind::RParen => depth -= 1,
                TokenKind::Comma if depth == 0 => break,
                TokenKind::Semi => break,
                _ => {}
            }
            self.pos += 1;
        }
        if self.pos == first {
            return Err(self.error("expected a polynomial"));
        }
        Ok(RawPoly {
            token: first,
            start: self.toks[first].start,
            end: self.toks[self.pos - 1].end,
        })
    }

    /// Reads a span over the ring's variables and checks it is homogeneous modulo
    /// the ring's prime.
    fn resolve(&self, raw: &RawPoly, prime: u64, vars: &[String]) -> Result<IntPolynomial, ParseError> {
        let text = &self.src[raw.start..raw.end];
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let poly = parse_int_polynomial(text, &names).map_err(|e| match e {
            CoreError::Parse { offset, message } => {
                let (line, col) = position(self.src, raw.start + offset);
                ParseError { line, col, message }
            }
            other => self.error_at(raw.token, other.to_string()),
        })?;
        let field = PrimeField::new(prime).expect("checked at declaration");
        let ctx = PolyContext::new(names.len(), field, MonomialOrder::Grevlex);
        if !poly.to_polynomial(ctx).is_homogeneous(&vec![1; names.len()]) {
            return Err(self.error_at(raw.token, format!("`{text}` is not homogeneous")));
        }
        Ok(poly)
    }

    fn resolve_all(&self, raw: &[RawPoly], ring: &str) -> Result<Vec<IntPolynomial>, ParseError> {
        let info = &self.rings[ring];
        raw.iter().map(|r| self.resolve(r, info.prime, &info.vars)).collect()
    }

    fn ring_of(&self, at: usize, name: &str) -> Result<&RingInfo, ParseError> {
        self.rings
            .get(name)
            .ok_or_else(|| self.error_at(at, format!("unknown ring `{name}`")))
    }

    fn ideal(&mut self) -> Result<Statement, ParseError> {
        let name = self.fresh_name()?;
        self.expect(TokenKind::Eq)?;
        let raw = self.raw_polys()?;
        let at = self.pos;
        if self.ident("`in`")? != "in" {
            return Err(self.error_at(at, "expected `in <ring>` after the generators"));
        }
        let at = self.pos;
        let ring = self.ident("a ring name")?;
        self.ring_of(at, &ring)?;
        let generators = self.resolve_all(&raw, &ring)?;
        self.ideals.insert(name.clone(), ring.clone());
        Ok(Statement::Ideal(IdealDecl { name, ring, generators }))
    }

    fn assume(&mut self) -> Result<Statement, ParseError> {
        let at = self.pos;
        let ring = self.ident("a ring name")?;
        self.ring_of(at, &ring)?;
        let at = self.pos;
        let kw = self.ident("an assumption")?;
        let assumption = Assumption::from_keyword(&kw).ok_or_else(|| {
            let names: Vec<&str> = Assumption::ALL.iter().map(|a| a.keyword()).collect();
            self.error_at(
                at,
                format!("unknown assumption `{kw}`; expected one of {}", names.join(", ")),
            )
        })?;
        Ok(Statement::Assume { ring, assumption })
    }

    fn check(&mut self) -> Result<Statement, ParseError> {
        let at = self.pos;
        let kw = self.ident("a check name")?;
        let check = CheckName::from_keyword(&kw).ok_or_else(|| {
            let names: Vec<&str> = CheckName::ALL.iter().map(|c| c.keyword()).collect();
            self.error_at(
                at,
                format!("unknown check `{kw}`; expected one of {}", names.join(", ")),
            )
        })?;
        let at = self.pos;
        let target = self.ident("an ideal name")?;
        let ring_name = match self.ideals.get(&target) {
            Some(r) => r.clone(),
            None if check.accepts_ring() && self.rings.contains_key(&target) => target.clone(),
            None => return Err(self.error_at(at, format!("unknown ideal `{target}`"))),
        };
        let mut params: Vec<(String, ParamValue)> = Vec::new();
        while let Some(TokenKind::Ident(_)) = self.peek() {
            let at = self.pos;
            let key = self.ident("a parameter")?;
            if !check.own_params().contains(&key.as_str()) && !COMMON_PARAMS.contains(&key.as_str()) {
                return Err(self.error_at(at, format!("`{}` does not take parameter `{key}`", check.keyword())));
            }
            if params.iter().any(|(k, _)| *k == key) {
                return Err(self.error_at(at, format!("parameter `{key}` repeated")));
            }
            self.expect(TokenKind::Eq)?;
            let value = self.value(&ring_name)?;
            params.push((key, value));
        }
        if let Some(missing) = check
            .required_params()
            .iter()
            .find(|k| !params.iter().any(|(p, _)| p == *k))
        {
            return Err(self.error(format!("`{}` needs parameter `{missing}`", check.keyword())));
        }
        Ok(Statement::Check(CheckCmd { check, target, params }))
    }

    fn value(&mut self, ring: &str) -> Result<ParamValue, ParseError> {
        if self.peek() == Some(&TokenKind::LParen) {
            let raw = self.raw_polys()?;
            return Ok(ParamValue::Polys(self.resolve_all(&raw, ring)?));
        }
        let at = self.pos;
        let a = self.int()?;
        match self.peek() {
            Some(TokenKind::DotDot) => {
                self.pos += 1;
                let b = self.int()?;
                if b < a {
                    return Err(self.error_at(at, format!("empty range {a}..{b}")));
                }
                Ok(ParamValue::Range(a, b))
            }
            Some(TokenKind::Comma) => {
                let mut v = vec![a];
                while self.peek() == Some(&TokenKind::Comma) {
                    self.pos += 1;
                    v.push(self.int()?);
                }
                Ok(ParamValue::List(v))
            }
            _ => Ok(ParamValue::Int(a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_statements() {
        let s = parse("ring R = F_7[x,y,z] / (x^3+y^3+z^3); ideal I = (x,y) in R;").unwrap();
        assert_eq!(s.statements.len(), 2);
    }

    #[test]
    fn check_with_range() {
        let s = parse("ring R = F_7[x,y]; ideal I = (x,y) in R; check bs_fpure I n=1..3;").unwrap();
        match &s.statements[2] {
            Statement::Check(c) => {
                assert_eq!(c.check, CheckName::BsFpure);
                assert_eq!(c.param("n"), Some(&ParamValue::Range(1, 3)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_prime_field() {
        let e = parse("ring R = F_4[x];").unwrap_err();
        assert_eq!(e.message, "4 is not prime");
        assert_eq!((e.line, e.col), (1, 10));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("ring R = F_7[x,y];\nideal I = (x, q) in R;").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains('q'), "{}", e.message);
        let e = parse("ring R = F_7[x,y];\nideal I = (x) in S;").unwrap_err();
        assert_eq!(e.message, "unknown ring `S`");
        let e = parse("ring R = F_7[x,y];\ncheck bs_fpure J;").unwrap_err();
        assert_eq!(e.message, "unknown ideal `J`");
        let e = parse("ring R = F_7[x,y] / (x^2 + y);").unwrap_err();
        assert!(e.message.contains("not homogeneous"));
        let e = parse("ring R = F_7[x,y]; ideal I = (x) in R; check spread I n=2;").unwrap_err();
        assert!(e.message.contains("does not take parameter `n`"));
        assert!(parse("ring R = F_7[x,y]").is_err());
        let e = parse("ring R = F_7[x,y]; ideal I = (x) in R; check containment I n=2;").unwrap_err();
        assert!(e.message.contains("needs parameter `k`"));
    }

    #[test]
    fn lists_and_polys() {
        let s = parse(
            "ring R = F_7[x,y]; ideal I = (x,y) in R; check fedder R primes=2,5,7; check frobenius_member I r=(x*y);",
        )
        .unwrap();
        match &s.statements[2] {
            Statement::Check(c) => assert_eq!(c.param("primes"), Some(&ParamValue::List(vec![2, 5, 7]))),
            other => panic!("{other:?}"),
        }
        match &s.statements[3] {
            Statement::Check(c) => assert!(matches!(c.param("r"), Some(ParamValue::Polys(v)) if v.len() == 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_script() {
        assert!(parse("  # nothing\n").unwrap().statements.is_empty());
    }
}
