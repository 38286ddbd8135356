use std::fmt::Write;

use skoda_core::polyarith::IntPolynomial;

use crate::ast::{CheckCmd, ParamValue, Script, Statement};

fn polys(ps: &[IntPolynomial], vars: &[String]) -> String {
    let parts: Vec<String> = ps.iter().map(|p| p.fmt_with(vars)).collect();
    format!("({})", parts.join(", "))
}

fn value(v: &ParamValue, vars: &[String]) -> String {
    match v {
        ParamValue::Int(a) => a.to_string(),
        ParamValue::Range(a, b) => format!("{a}..{b}"),
        ParamValue::List(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        ParamValue::Polys(ps) => polys(ps, vars),
    }
}

/// One check statement; `vars` are the variables of the target's ring.
pub fn check(cmd: &CheckCmd, vars: &[String]) -> String {
    let mut s = format!("check {} {}", cmd.check.keyword(), cmd.target);
    for (k, v) in &cmd.params {
        let _ = write!(s, " {k}={}", value(v, vars));
    }
    s.push(';');
    s
}

/// Canonical text of a script, one statement per line. Parsing the output gives
/// back the same script.
pub fn script(script: &Script) -> String {
    let mut rings: Vec<(&str, &[String])> = Vec::new();
    let mut ideals: Vec<(&str, &str)> = Vec::new();
    let vars_of = |rings: &[(&str, &[String])], name: &str| -> Vec<String> {
        rings
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v.to_vec())
            .unwrap_or_default()
    };
    let mut out = String::new();
    for st in &script.statements {
        match st {
            Statement::Ring(r) => {
                let _ = write!(out, "ring {} = F_{}[{}]", r.name, r.prime, r.vars.join(", "));
                if !r.relations.is_empty() {
                    let _ = write!(out, " / {}", polys(&r.relations, &r.vars));
                }
                out.push_str(";\n");
                rings.push((&r.name, &r.vars));
            }
            Statement::Ideal(i) => {
                let vars = vars_of(&rings, &i.ring);
                let _ = writeln!(out, "ideal {} = {} in {};", i.name, polys(&i.generators, &vars), i.ring);
                ideals.push((&i.name, &i.ring));
            }
            Statement::Assume { ring, assumption } => {
                let _ = writeln!(out, "assume {ring} {};", assumption.keyword());
            }
            Statement::Check(c) => {
                let ring = ideals
                    .iter()
                    .find(|(n, _)| *n == c.target)
                    .map_or(c.target.as_str(), |(_, r)| r);
                out.push_str(&check(c, &vars_of(&rings, ring)));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn canonical_form() {
        let src = "ring R=F_7[x,y,z]/(z^3+x^3+y^3);ideal I=(y,x) in R; assume R equidimensional;\ncheck bs_fpure I n=1..3 primes=7,13; check frobenius_member I r=(z^2);";
        let text = script(&parse(src).unwrap());
        assert_eq!(
            text,
            "ring R = F_7[x, y, z] / (x^3 + y^3 + z^3);\n\
             ideal I = (y, x) in R;\n\
             assume R equidimensional;\n\
             check bs_fpure I n=1..3 primes=7,13;\n\
             check frobenius_member I r=(z^2);\n"
        );
        assert_eq!(parse(&text).unwrap(), parse(src).unwrap());
    }
}
