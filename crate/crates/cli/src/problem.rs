//! Problem files:
//!
//! ```text
//! # comment
//! ring: x, y, z
//! field: rational
//! ideal: x^2*y + z^3, x*y*z,
//!        y*z^2
//! hyperplane: x + y + z
//! ```
//!
//! Only `ideal` is required. Without a `ring` line the variables are taken in
//! order of first appearance. A line without a `key:` prefix continues the
//! previous entry.

use std::collections::HashMap;
use std::fmt;

use ginbetti::field::{CoeffField, Field, Rationals};
use ginbetti::{Ideal, Monomial, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub names: Vec<String>,
    pub field: Option<CoeffField>,
    pub ideal: Ideal<Rationals>,
    /// Coefficients of a linear form, one per variable.
    pub hyperplane: Option<Vec<BigRational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError {
        line: pos.line,
        col: pos.col,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str, line: usize, col0: usize, out: &mut Vec<(Tok, Pos)>) -> Result<(), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut t = 0;
    while t < chars.len() {
        let c = chars[t];
        let pos = Pos { line, col: col0 + t };
        if c.is_whitespace() {
            t += 1;
        } else if c.is_ascii_digit() {
            let start = t;
            while t < chars.len() && chars[t].is_ascii_digit() {
                t += 1;
            }
            let s: String = chars[start..t].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = t;
            while t < chars.len() && (chars[t].is_alphanumeric() || chars[t] == '_') {
                t += 1;
            }
            out.push((Tok::Ident(chars[start..t].iter().collect()), pos));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Op(c), pos));
            t += 1;
        } else {
            return Err(err(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigRational),
    Var(String, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    toks: &'a [(Tok, Pos)],
    at: usize,
    end: Pos,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn list(&mut self) -> Result<Vec<(Expr, Pos)>, ParseError> {
        let mut out = Vec::new();
        loop {
            let pos = self.pos();
            out.push((self.expr()?, pos));
            if !self.eat(',') {
                break;
            }
        }
        if self.at < self.toks.len() {
            return Err(err(self.pos(), "expected ',' or end of input"));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.toks.get(self.at) {
                Some((Tok::Num(e), _)) => {
                    let e = e.to_u32().ok_or_else(|| err(pos, "exponent too large"))?;
                    self.at += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(err(pos, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((Tok::Num(v), _)) => {
                self.at += 1;
                Ok(Expr::Num(BigRational::from_integer(v)))
            }
            Some((Tok::Ident(name), _)) => {
                self.at += 1;
                Ok(Expr::Var(name, pos))
            }
            Some((Tok::Op('('), _)) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Some((Tok::Op(c), _)) => Err(err(pos, format!("unexpected '{c}'"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

fn collect_vars(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Num(_) => {}
        Expr::Var(v, _) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_vars(a, out),
    }
}

fn eval(e: &Expr, vars: &HashMap<String, usize>, n: usize) -> Result<Polynomial<Rationals>, ParseError> {
    let q = Rationals;
    Ok(match e {
        Expr::Num(c) => Polynomial::constant(n, q, c.clone()),
        Expr::Var(v, pos) => {
            let &i = vars
                .get(v)
                .ok_or_else(|| err(*pos, format!("unknown variable '{v}'")))?;
            Polynomial::var(n, q, i)
        }
        Expr::Add(a, b) => &eval(a, vars, n)? + &eval(b, vars, n)?,
        Expr::Sub(a, b) => &eval(a, vars, n)? - &eval(b, vars, n)?,
        Expr::Mul(a, b) => &eval(a, vars, n)? * &eval(b, vars, n)?,
        Expr::Neg(a) => eval(a, vars, n)?.scale(&q.from_i64(-1)),
        Expr::Pow(a, k) => eval(a, vars, n)?.pow(*k),
        Expr::Div(a, b, pos) => {
            let d = eval(b, vars, n)?;
            let c = match d.terms() {
                [(m, c)] if m.is_one() => c.clone(),
                [] => return Err(err(*pos, "division by zero")),
                _ => return Err(err(*pos, "can only divide by a nonzero number")),
            };
            eval(a, vars, n)?.scale(&q.inv(&c).expect("nonzero"))
        }
    })
}

const KEYS: [&str; 4] = ["ring", "field", "ideal", "hyperplane"];

/// Splits `key: value` off a line, returning the key and the value's column.
fn split_key(line: &str) -> Option<(&'static str, usize)> {
    let colon = line.find(':')?;
    let key = line[..colon].trim();
    KEYS.iter().find(|k| **k == key).map(|k| (*k, colon + 1))
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut sections: HashMap<&'static str, (Vec<(Tok, Pos)>, Pos)> = HashMap::new();
    let mut field_text: Option<(String, Pos)> = None;
    let mut current: Option<&'static str> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let (key, start) = match split_key(line) {
            Some((key, start)) => {
                if sections.contains_key(key) || (key == "field" && field_text.is_some()) {
                    return Err(err(Pos { line: line_no, col: 1 }, format!("duplicate '{key}' entry")));
                }
                (key, start)
            }
            None => match current {
                Some(key) => (key, 0),
                None => {
                    let col = line.len() - line.trim_start().len() + 1;
                    return Err(err(
                        Pos { line: line_no, col },
                        "expected one of 'ring:', 'field:', 'ideal:', 'hyperplane:'",
                    ));
                }
            },
        };
        current = Some(key);
        let value = &line[start..];
        let value_pos = Pos {
            line: line_no,
            col: start + 1 + (value.len() - value.trim_start().len()),
        };
        if key == "field" {
            let entry = field_text.get_or_insert_with(|| (String::new(), value_pos));
            entry.0.push_str(value.trim());
            continue;
        }
        let entry = sections.entry(key).or_insert_with(|| (Vec::new(), value_pos));
        tokenize(value, line_no, start + 1, &mut entry.0)?;
    }

    let field = match field_text {
        Some((s, pos)) => Some(s.parse::<CoeffField>().map_err(|e| err(pos, e.to_string()))?),
        None => None,
    };

    let parse_list = |key: &str| -> Result<Option<Vec<(Expr, Pos)>>, ParseError> {
        match sections.get(key) {
            None => Ok(None),
            Some((toks, pos)) => {
                let end = toks
                    .last()
                    .map(|(_, p)| Pos {
                        line: p.line,
                        col: p.col + 1,
                    })
                    .unwrap_or(*pos);
                Parser { toks, at: 0, end }.list().map(Some)
            }
        }
    };

    let gens = parse_list("ideal")?.ok_or_else(|| err(Pos { line: 1, col: 1 }, "missing 'ideal:' entry"))?;
    let hyper = parse_list("hyperplane")?;

    let names: Vec<String> = match sections.get("ring") {
        Some((toks, pos)) => {
            let mut names = Vec::new();
            let mut expect_name = true;
            for (t, p) in toks {
                match (t, expect_name) {
                    (Tok::Ident(v), true) => {
                        if names.contains(v) {
                            return Err(err(*p, format!("variable '{v}' declared twice")));
                        }
                        names.push(v.clone());
                        expect_name = false;
                    }
                    (Tok::Op(','), false) => expect_name = true,
                    _ => return Err(err(*p, "expected a comma-separated list of variable names")),
                }
            }
            if names.is_empty() || expect_name {
                return Err(err(*pos, "expected a comma-separated list of variable names"));
            }
            names
        }
        None => {
            let mut names = Vec::new();
            for (e, _) in gens.iter().chain(hyper.iter().flatten()) {
                collect_vars(e, &mut names);
            }
            names
        }
    };
    if names.len() > ginbetti::monomial::MAX_VARS {
        return Err(err(
            Pos { line: 1, col: 1 },
            format!("at most {} variables are supported", ginbetti::monomial::MAX_VARS),
        ));
    }
    let n = names.len();
    let vars: HashMap<String, usize> = names.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

    let mut polys = Vec::new();
    for (k, (e, pos)) in gens.iter().enumerate() {
        let p = eval(e, &vars, n)?;
        if !p.is_homogeneous() {
            return Err(err(*pos, format!("generator {} is not homogeneous", k + 1)));
        }
        polys.push(p);
    }
    let ideal = Ideal::new(n, Rationals, polys).map_err(|e| err(Pos { line: 1, col: 1 }, e.to_string()))?;

    let hyperplane = match hyper {
        None => None,
        Some(list) => {
            let [(e, pos)] = list.as_slice() else {
                return Err(err(list[1].1, "expected a single linear form"));
            };
            let h = eval(e, &vars, n)?;
            if h.is_zero() || h.terms().iter().any(|(m, _)| m.degree() != 1) {
                return Err(err(*pos, "hyperplane must be a nonzero linear form"));
            }
            Some((0..n).map(|i| h.coefficient(&Monomial::var(n, i))).collect::<Vec<_>>())
        }
    };
    Ok(Problem {
        names,
        field,
        ideal,
        hyperplane,
    })
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}", self.names.join(", "))?;
        let gens: Vec<String> = self
            .ideal
            .generators()
            .iter()
            .map(|g| g.format_with(&self.names))
            .collect();
        write!(f, "ideal: {}", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_ideal() {
        let p = parse_problem("ring: x, y, z\nideal: x^2*y + z^3, x*y*z, y*z^2").unwrap();
        assert_eq!(p.names, vec!["x", "y", "z"]);
        assert_eq!(p.ideal.nvars(), 3);
        assert_eq!(p.ideal.generator_degrees(), vec![3, 3, 3]);
        assert_eq!(p.to_string(), "ring: x, y, z\nideal: x^2*y + z^3, x*y*z, y*z^2");
    }

    #[test]
    fn inferred_variables_comments_and_continuations() {
        let p = parse_problem("# a comment\nideal: b^2, # trailing\n  a*b\n").unwrap();
        assert_eq!(p.names, vec!["b", "a"]);
        assert_eq!(p.ideal.generators().len(), 2);
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_problem("ring: x, y\nideal: 3/2*x^2 - (x - y)^2/4\nfield: fp:101").unwrap();
        assert_eq!(p.field, Some(CoeffField::PrimeField(101)));
        assert_eq!(p.ideal.generators()[0].len(), 3);
    }

    #[test]
    fn complete_intersection_fixture() {
        let p = parse_problem("ring: x, y\nideal: x^2, y^3").unwrap();
        assert_eq!(p.ideal.generator_degrees(), vec![2, 3]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_problem("ideal: x + 1").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
        assert!(e.message.contains("generator 1"));

        let e = parse_problem("ring: x, y\nideal: x^2, y^2 $").unwrap_err();
        assert_eq!((e.line, e.col), (2, 17));

        let e = parse_problem("ring: x\nideal: x*z").unwrap_err();
        assert_eq!((e.line, e.col), (2, 10));
        assert!(e.message.contains("unknown variable"));

        let e = parse_problem("ring: x\nideal: (x").unwrap_err();
        assert_eq!(e.line, 2);

        assert!(parse_problem("ring: x, y").is_err());
        assert!(parse_problem("ideal: x/y").is_err());
        assert!(parse_problem("ideal: x\nideal: y").is_err());
        assert!(parse_problem("bogus: x").is_err());
    }

    #[test]
    fn hyperplanes() {
        let p = parse_problem("ring: x, y, z\nideal: x^2 + y*z\nhyperplane: x + 2*y - z").unwrap();
        let h = p.hyperplane.unwrap();
        assert_eq!(h[2], Rationals.from_i64(-1));
        assert_eq!(h[1], Rationals.from_i64(2));
        assert!(parse_problem("ring: x, y\nideal: x\nhyperplane: x^2").is_err());
    }
}
