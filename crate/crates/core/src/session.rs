//! Line-oriented session files.
//!
//! ```text
//! # comment
//! ring QQ[x,y,z] order grevlex
//! ideal I = x^2*y, y^3 - z
//! ideal L = I + J
//! option seed 7
//! ```
//!
//! Ideal right-hand sides are either comma-separated polynomials or an
//! expression in previously declared ideals using `+`, `*` and `^`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Field, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SessionOptions {
    pub seed: Option<u64>,
    pub n_max: Option<u32>,
    pub degree_cap: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub ring: Arc<Ring>,
    /// Declared ideals in declaration order.
    pub ideals: Vec<(String, Ideal)>,
    pub options: SessionOptions,
}

impl Session {
    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| Error::precondition("session", format!("undefined ideal `{name}`")))
    }

    /// Parses a polynomial in the session ring.
    pub fn polynomial(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(&self.ring, text)
    }

    /// Parses an ideal operand: a declared name, or comma-separated
    /// polynomials.
    pub fn ideal_arg(&self, text: &str) -> Result<Ideal> {
        let names: BTreeMap<String, Ideal> = self.ideals.iter().cloned().collect();
        parse_ideal_rhs(&self.ring, &names, text, 1, 1)
    }
}

impl fmt::Display for Session {
    /// Canonical form; reparses to an equal session.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ring {}[{}] order {}",
            self.ring.field(),
            self.ring.vars().join(","),
            self.ring.order()
        )?;
        for (name, ideal) in &self.ideals {
            let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
            writeln!(f, "ideal {name} = {}", gens.join(", "))?;
        }
        let o = &self.options;
        if let Some(s) = o.seed {
            writeln!(f, "option seed {s}")?;
        }
        if let Some(n) = o.n_max {
            writeln!(f, "option nmax {n}")?;
        }
        if let Some(d) = o.degree_cap {
            writeln!(f, "option degcap {d}")?;
        }
        Ok(())
    }
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// 1-based column of byte offset `at` within `line`.
fn col(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

pub fn parse_session(text: &str) -> Result<Session> {
    let mut ring: Option<Arc<Ring>> = None;
    let mut ideals: Vec<(String, Ideal)> = Vec::new();
    let mut options = SessionOptions::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let start = line.len() - trimmed.len();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_at = start + keyword.len() + (trimmed.len() - keyword.len() - rest.len()).min(1);
        match keyword {
            "ring" => {
                if ring.is_some() {
                    return Err(perr(lineno, col(line, start), "ring already declared"));
                }
                ring = Some(parse_ring_decl(line, rest, rest_at, lineno)?);
            }
            "ideal" => {
                let Some(r) = &ring else {
                    return Err(perr(lineno, col(line, start), "ring not declared"));
                };
                let Some((name, rhs)) = rest.split_once('=') else {
                    return Err(perr(lineno, col(line, rest_at), "expected `ideal NAME = ...`"));
                };
                let name = name.trim();
                if !is_ident(name) {
                    return Err(perr(lineno, col(line, rest_at), format!("invalid ideal name `{name}`")));
                }
                if r.var_index(name).is_ok() {
                    return Err(perr(
                        lineno,
                        col(line, rest_at),
                        format!("ideal name `{name}` clashes with a variable"),
                    ));
                }
                if ideals.iter().any(|(n, _)| n == name) {
                    return Err(perr(lineno, col(line, rest_at), format!("ideal `{name}` declared twice")));
                }
                let rhs_at = rest_at + rest.find('=').unwrap_or(0) + 1;
                let names: BTreeMap<String, Ideal> = ideals.iter().cloned().collect();
                let ideal = parse_ideal_rhs(r, &names, rhs, lineno, col(line, rhs_at))?;
                ideals.push((name.to_string(), ideal));
            }
            "option" => {
                let mut parts = rest.split_whitespace();
                let (Some(key), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(perr(lineno, col(line, rest_at), "expected `option KEY VALUE`"));
                };
                let bad = || perr(lineno, col(line, rest_at), format!("invalid value `{value}` for {key}"));
                match key {
                    "seed" => options.seed = Some(value.parse().map_err(|_| bad())?),
                    "nmax" => options.n_max = Some(value.parse().map_err(|_| bad())?),
                    "degcap" => options.degree_cap = Some(value.parse().map_err(|_| bad())?),
                    _ => return Err(perr(lineno, col(line, rest_at), format!("unknown option `{key}`"))),
                }
            }
            _ => {
                return Err(perr(lineno, col(line, start), format!("unknown keyword `{keyword}`")));
            }
        }
    }
    let ring = ring.ok_or_else(|| perr(1, 1, "ring not declared"))?;
    Ok(Session {
        ring,
        ideals,
        options,
    })
}

fn parse_ring_decl(line: &str, rest: &str, rest_at: usize, lineno: usize) -> Result<Arc<Ring>> {
    let Some(open) = rest.find('[') else {
        return Err(perr(lineno, col(line, rest_at), "expected `FIELD[vars]`"));
    };
    let Some(close) = rest.find(']') else {
        return Err(perr(lineno, col(line, rest_at + open), "missing `]`"));
    };
    let field_text = rest[..open].trim();
    let field = match field_text {
        "QQ" => Field::Rational,
        _ => {
            let p = field_text
                .strip_prefix("GF(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.trim().parse::<u32>().ok())
                .ok_or_else(|| perr(lineno, col(line, rest_at), format!("unknown field `{field_text}`")))?;
            Field::prime(p).map_err(|e| perr(lineno, col(line, rest_at), e.to_string()))?
        }
    };
    let mut vars: Vec<String> = Vec::new();
    let mut at = rest_at + open + 1;
    for part in rest[open + 1..close].split(',') {
        let name = part.trim();
        if !is_ident(name) {
            return Err(perr(lineno, col(line, at), format!("invalid variable name `{name}`")));
        }
        if vars.iter().any(|v| v == name) {
            return Err(perr(lineno, col(line, at), format!("duplicate variable `{name}`")));
        }
        vars.push(name.to_string());
        at += part.len() + 1;
    }
    let tail = rest[close + 1..].trim();
    let order = match tail.split_whitespace().collect::<Vec<_>>().as_slice() {
        [] => MonomialOrder::GrevLex,
        ["order", "grevlex"] => MonomialOrder::GrevLex,
        ["order", "lex"] => MonomialOrder::Lex,
        _ => {
            return Err(perr(
                lineno,
                col(line, rest_at + close + 1),
                format!("expected `order grevlex` or `order lex`, found `{tail}`"),
            ))
        }
    };
    Ring::new(field, vars, order).map_err(|e| perr(lineno, col(line, rest_at), e.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        let column = col0 + text[..at].chars().count();
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |x| x.0);
            out.push((Tok::Num(text[at..end].parse().expect("digits")), column));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |x| x.0);
            out.push((Tok::Ident(text[at..end].to_string()), column));
            i = j;
        } else if "+-*^/(),".contains(c) {
            out.push((Tok::Sym(c), column));
            i += 1;
        } else {
            return Err(perr(line, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    names: &'a BTreeMap<String, Ideal>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        perr(self.line, self.column(), message)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an exponent")),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return Err(self.err("expected a denominator"));
                    };
                    let c = field
                        .from_ratio(&n, &d)
                        .ok_or_else(|| self.err("zero denominator"))?;
                    self.pos += 1;
                    Ok(Polynomial::constant(self.ring, c))
                } else {
                    Ok(Polynomial::constant(self.ring, field.from_bigint(&n)))
                }
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Ok(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.ring, i))
                }
                Err(_) => Err(self.err(format!("unknown variable `{name}`"))),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("unexpected `{}`", render_tok(&t)))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn ideal_expr(&mut self) -> Result<Ideal> {
        let mut acc = self.ideal_term()?;
        while self.eat('+') {
            acc = acc.sum(&self.ideal_term()?);
        }
        Ok(acc)
    }

    fn ideal_term(&mut self) -> Result<Ideal> {
        let mut acc = self.ideal_power()?;
        while self.eat('*') {
            acc = acc.product(&self.ideal_power()?);
        }
        Ok(acc)
    }

    fn ideal_power(&mut self) -> Result<Ideal> {
        let base = match self.peek().cloned() {
            Some(Tok::Ident(name)) => match self.names.get(&name) {
                Some(i) => {
                    self.pos += 1;
                    i.clone()
                }
                None => return Err(self.err(format!("undefined ideal `{name}`"))),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.ideal_expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                inner
            }
            _ => return Err(self.err("expected an ideal name")),
        };
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(base.power(e));
        }
        Ok(base)
    }
}

fn render_tok(t: &Tok) -> String {
    match t {
        Tok::Num(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Sym(c) => c.to_string(),
    }
}

/// Parses `text` as a polynomial in `ring`; errors report columns relative
/// to `text`.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let names = BTreeMap::new();
    let mut p = Parser {
        ring,
        names: &names,
        toks: tokenize(text, 1, 1)?,
        pos: 0,
        line: 1,
        end_col: text.chars().count() + 1,
    };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

fn parse_ideal_rhs(
    ring: &Arc<Ring>,
    names: &BTreeMap<String, Ideal>,
    text: &str,
    line: usize,
    col0: usize,
) -> Result<Ideal> {
    let toks = tokenize(text, line, col0)?;
    let mut p = Parser {
        ring,
        names,
        toks,
        pos: 0,
        line,
        end_col: col0 + text.chars().count(),
    };
    let ideal_mode = p.toks.iter().any(|(t, _)| match t {
        Tok::Ident(n) => ring.var_index(n).is_err(),
        _ => false,
    });
    if ideal_mode {
        let first_unknown = p.toks.iter().find_map(|(t, c)| match t {
            Tok::Ident(n) if ring.var_index(n).is_err() && !names.contains_key(n) => Some((n.clone(), *c)),
            _ => None,
        });
        if let Some((n, c)) = first_unknown {
            return Err(perr(line, c, format!("undefined ideal or variable `{n}`")));
        }
        let ideal = p.ideal_expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        return Ok(ideal);
    }
    let mut gens = Vec::new();
    if p.toks.is_empty() {
        return Ok(Ideal::zero(ring));
    }
    loop {
        gens.push(p.expr()?);
        if p.pos == p.toks.len() {
            break;
        }
        if !p.eat(',') {
            return Err(p.err("expected `,`"));
        }
    }
    Ok(Ideal::new(ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse_session(text) {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn basic_session() {
        let s = parse_session("ring QQ[x]\nideal I = x").unwrap();
        assert_eq!(s.ideal("I").unwrap().to_string(), "(x)");
        let s = parse_session("ring GF(7)[x,y]\nideal J = 8*x").unwrap();
        assert_eq!(s.ideal("J").unwrap().to_string(), "(x)");
        assert_eq!(parse_err("ideal I = x").2, "ring not declared");
    }

    #[test]
    fn expressions_and_options() {
        let text = "# demo\nring QQ[x,y,z] order lex\nideal I = x^2*y, (y - 1/2)^2 - z\nideal J = y\nideal L = I + J^2\noption seed 42\n";
        let s = parse_session(text).unwrap();
        assert_eq!(s.ring.order(), &MonomialOrder::Lex);
        assert_eq!(s.ideal("I").unwrap().generators()[1].to_string(), "y^2 - y - z + 1/4");
        assert_eq!(s.ideal("L").unwrap().generators().len(), 3);
        assert_eq!(s.options.seed, Some(42));
        assert!(s.ideal("Q").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_err("ring RR[x]").2, "unknown field `RR`");
        let (l, c, m) = parse_err("ring QQ[x,x]");
        assert_eq!((l, c, m.as_str()), (1, 11, "duplicate variable `x`"));
        let (l, c, _) = parse_err("ring QQ[x,y]\nideal I = x^2 +* y");
        assert_eq!((l, c), (2, 16));
        let (l, c, m) = parse_err("ring QQ[x]\nideal L = I + x");
        assert_eq!((l, c, m.as_str()), (2, 11, "undefined ideal or variable `I`"));
        assert_eq!(parse_err("ring GF(6)[x]").0, 1);
    }

    #[test]
    fn canonical_form_round_trips() {
        let text = "ring GF(5)[a,b] order grevlex\nideal I = 3*a^2 - b, a*b\nideal Z = 0\noption nmax 3\n";
        let s = parse_session(text).unwrap();
        let again = parse_session(&s.to_string()).unwrap();
        assert_eq!(s.to_string(), again.to_string());
        for ((_, a), (_, b)) in s.ideals.iter().zip(&again.ideals) {
            let b = Ideal::new(&s.ring, b.generators().iter().map(|g| g.map_to(&s.ring, &[Some(0), Some(1)]).unwrap()).collect());
            assert!(a.equals(&b).unwrap());
        }
    }
}
