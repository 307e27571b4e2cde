//! Expression language of the command line.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer | "^" unary)?      integer exponent: power, otherwise wedge
//! atom   := integer | x{i} | d{i} | ident | "(" expr ")" | "F[" expr "," expr "]"
//!         | "field(" k ("," "{" i,.. "}" ":" expr)* ")" | ident "(" expr,.. ")"
//! ```

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, Signed, ToPrimitive, Zero};
use serde_json::Value as Json;

use crate::chart::{Poly, Rational, VField};
use crate::error::{Error, Result};
use crate::free_lr::{FreeLRElem, RelativeSpec};
use crate::groupoid::{self, KField};
use crate::polyvector::Polyvector;
use crate::subset::{Subset, MAX_ARITY};

/// A parsed value.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Poly(Poly),
    Field(VField),
    Free(FreeLRElem),
    KField(KField),
    Polyvector(Polyvector),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Field(_) => "vector field",
            Value::Free(_) => "free element",
            Value::KField(_) => "k-field",
            Value::Polyvector(_) => "polyvector",
        }
    }

    fn is_zero_poly(&self) -> bool {
        matches!(self, Value::Poly(p) if p.is_zero())
    }

    pub fn as_poly(&self) -> Result<Poly> {
        match self {
            Value::Poly(p) => Ok(p.clone()),
            other => Err(type_error("a polynomial", other)),
        }
    }

    pub fn as_index(&self) -> Result<usize> {
        self.as_poly()?
            .as_constant()
            .filter(|c| c.is_integer() && !c.is_negative())
            .and_then(|c| c.to_integer().to_usize())
            .ok_or_else(|| Error::Type(format!("expected a nonnegative integer, got {self}")))
    }

    pub fn as_free(&self, n: usize) -> Result<FreeLRElem> {
        match self {
            Value::Free(u) => Ok(u.clone()),
            Value::Field(v) => Ok(FreeLRElem::from_vfield(v)),
            v if v.is_zero_poly() => Ok(FreeLRElem::zero(n)),
            other => Err(type_error("a free element", other)),
        }
    }

    pub fn as_field(&self, n: usize) -> Result<VField> {
        match self {
            Value::Field(v) => Ok(v.clone()),
            Value::Free(u) if u.is_classical() => Ok(u.degree_one_part()),
            v if v.is_zero_poly() => Ok(VField::zero(n)),
            other => Err(type_error("a vector field", other)),
        }
    }

    pub fn as_kfield(&self, n: usize) -> Result<KField> {
        match self {
            Value::KField(k) => Ok(k.clone()),
            Value::Field(_) | Value::Free(_) => Ok(KField::from_elem(self.as_free(n)?)),
            other => Err(type_error("a k-field", other)),
        }
    }

    pub fn as_polyvector(&self, n: usize) -> Result<Polyvector> {
        match self {
            Value::Polyvector(p) => Ok(p.clone()),
            Value::Field(_) | Value::Free(_) => Ok(Polyvector::from_field(&self.as_field(n)?)),
            v if v.is_zero_poly() => Ok(Polyvector::zero(n)),
            other => Err(type_error("a polyvector", other)),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Poly(p) => Json::String(p.to_string()),
            Value::Field(v) => FreeLRElem::from_vfield(v).to_json(),
            Value::Free(u) => u.to_json(),
            Value::KField(k) => k.to_json(),
            Value::Polyvector(p) => p.to_json(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Field(v) => write!(f, "{v}"),
            Value::Free(u) => write!(f, "{u}"),
            Value::KField(k) => write!(f, "{k}"),
            Value::Polyvector(p) => write!(f, "{p}"),
        }
    }
}

fn type_error(expected: &str, got: &Value) -> Error {
    Error::Type(format!("expected {expected}, got {} `{got}`", got.kind()))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut p = 0;
    while p < chars.len() {
        let c = chars[p];
        let col = p + 1;
        if c.is_whitespace() {
            p += 1;
        } else if c.is_ascii_digit() {
            let start = p;
            while p < chars.len() && chars[p].is_ascii_digit() {
                p += 1;
            }
            let digits: String = chars[start..p].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = p;
            while p < chars.len() && (chars[p].is_alphanumeric() || chars[p] == '_' || chars[p] == '?') {
                p += 1;
            }
            out.push((Tok::Ident(chars[start..p].iter().collect()), col));
        } else if "+-*/^()[]{},:".contains(c) {
            out.push((Tok::Sym(c), col));
            p += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Parsing context: the chart (with its vertical set) and named bindings.
pub struct Env<'a> {
    pub spec: &'a RelativeSpec,
    pub bindings: &'a HashMap<String, Value>,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    env: &'a Env<'a>,
}

/// `x3` -> `Some(3)` for a prefix `x`.
fn indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// Whether `name` may be bound with `let`.
pub fn is_bindable(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_alphanumeric() || c == '_')
        && indexed(name, 'x').is_none()
        && indexed(name, 'd').is_none()
        && name != "F"
        && !FUNCTIONS.contains(&name)
}

const FUNCTIONS: &[&str] = &[
    "field", "cup", "compose", "face", "sdiff", "homotopy", "project", "wedge", "schouten", "bracket", "lie", "reduce",
];

impl<'a> Parser<'a> {
    fn n(&self) -> usize {
        self.env.spec.dim()
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col(),
            message: message.into(),
        }
    }

    fn at(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((Tok::Sym(s), _)) if *s == c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.at(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.toks.get(self.pos) {
            Some((Tok::Int(i), _)) => {
                let v = i.to_usize().ok_or_else(|| self.err("integer too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, false)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let col = self.col();
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs).map_err(|e| self.at_col(e, col))?;
            } else if self.eat('/') {
                let col = self.col();
                let rhs = self.unary()?;
                let c = rhs
                    .as_poly()
                    .ok()
                    .and_then(|p| p.as_constant())
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| self.at_col(Error::Type("division by a nonzero constant only".into()), col))?;
                acc = self.mul(
                    acc,
                    Value::Poly(Poly::constant(self.n(), Rational::from_integer(1.into()) / c)),
                )?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn at_col(&self, e: Error, column: usize) -> Error {
        match e {
            Error::Type(message) => Error::Parse {
                line: self.line,
                column,
                message,
            },
            other => other,
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            let v = self.unary()?;
            return self.mul(
                Value::Poly(Poly::constant(self.n(), Rational::from_integer((-1).into()))),
                v,
            );
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        if let (Value::Poly(p), Some((Tok::Int(e), _))) = (&base, self.toks.get(self.pos)) {
            let next_is_op = !matches!(self.toks.get(self.pos + 1), Some((Tok::Sym('^'), _)));
            if next_is_op {
                let e = e.to_u32().ok_or_else(|| self.err("exponent too large"))?;
                self.pos += 1;
                return Ok(Value::Poly(p.pow(e)));
            }
        }
        let rhs = self.unary()?;
        let n = self.n();
        Ok(Value::Polyvector(base.as_polyvector(n)?.wedge(&rhs.as_polyvector(n)?)?))
    }

    fn atom(&mut self) -> Result<Value> {
        let n = self.n();
        let Some((tok, col)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(i) => Ok(Value::Poly(Poly::constant(n, Rational::from_integer(i)))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Sym(c) => {
                self.pos -= 1;
                Err(self.err(format!("unexpected `{c}`")))
            }
            Tok::Ident(name) => {
                if let Some(i) = indexed(&name, 'x') {
                    return self.checked_index(i, col).map(|i| Value::Poly(Poly::var(n, i)));
                }
                if let Some(i) = indexed(&name, 'd') {
                    return self.checked_index(i, col).map(|i| Value::Field(VField::coord(n, i)));
                }
                if name == "F" && self.eat('[') {
                    let a = self.expr()?.as_free(n)?;
                    self.expect(',')?;
                    let b = self.expr()?.as_free(n)?;
                    self.expect(']')?;
                    return Ok(Value::Free(self.env.spec.bracket(&a, &b)?));
                }
                if self.at('(') {
                    self.pos += 1;
                    return self.call(&name, col);
                }
                self.env
                    .bindings
                    .get(&name)
                    .cloned()
                    .ok_or(Error::UnknownIdentifier(name))
            }
        }
    }

    fn checked_index(&self, i: usize, col: usize) -> Result<usize> {
        if i >= self.n() {
            return Err(Error::Parse {
                line: self.line,
                column: col,
                message: format!("index {i} out of range for dimension {}", self.n()),
            });
        }
        Ok(i)
    }

    fn args(&mut self) -> Result<Vec<Value>> {
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn field_literal(&mut self) -> Result<Value> {
        let k = self.int()?;
        if k == 0 || k > MAX_ARITY {
            return Err(self.err(format!("arity must be between 1 and {MAX_ARITY}")));
        }
        let mut comps = Vec::new();
        while self.eat(',') {
            self.expect('{')?;
            let mut phi = Subset::EMPTY;
            loop {
                let col = self.col();
                let i = self.int()?;
                if i >= k {
                    return Err(Error::Parse {
                        line: self.line,
                        column: col,
                        message: format!("subset index {i} out of range for arity {k}"),
                    });
                }
                phi = phi.insert(i);
                if !self.eat(',') {
                    break;
                }
            }
            self.expect('}')?;
            self.expect(':')?;
            comps.push((phi, self.expr()?.as_free(self.n())?));
        }
        self.expect(')')?;
        Ok(Value::KField(KField::new(k, self.n(), comps)?))
    }

    fn call(&mut self, name: &str, col: usize) -> Result<Value> {
        if name == "field" {
            return self.field_literal();
        }
        let args = self.args()?;
        let n = self.n();
        let spec = self.env.spec;
        let arity = |want: usize| -> Result<()> {
            if args.len() == want {
                Ok(())
            } else {
                Err(Error::Parse {
                    line: self.line,
                    column: col,
                    message: format!("`{name}` takes {want} arguments, got {}", args.len()),
                })
            }
        };
        let k = |i: usize| args[i].as_kfield(n);
        let p = |i: usize| args[i].as_polyvector(n);
        let idx = |i: usize| args[i].as_index();
        Ok(match name {
            "cup" => {
                arity(2)?;
                Value::KField(groupoid::cup(&k(0)?, &k(1)?)?)
            }
            "compose" => {
                arity(2)?;
                Value::KField(groupoid::compose(&k(0)?, &k(1)?)?)
            }
            "face" => {
                arity(2)?;
                Value::KField(groupoid::face(&k(0)?, idx(1)?)?)
            }
            "sdiff" => {
                arity(4)?;
                Value::KField(groupoid::strong_diff(&k(0)?, &k(1)?, idx(2)?, idx(3)?)?)
            }
            "homotopy" => {
                arity(3)?;
                Value::KField(groupoid::homotopy(spec, &k(0)?, idx(1)?, idx(2)?)?)
            }
            "project" => {
                arity(1)?;
                match &args[0] {
                    Value::KField(nu) => Value::KField(nu.project()),
                    other => Value::Field(other.as_free(n)?.anchor()),
                }
            }
            "reduce" => {
                arity(1)?;
                Value::Polyvector(groupoid::reduce_to_polyvector(spec, &k(0)?)?)
            }
            "wedge" => {
                arity(2)?;
                Value::Polyvector(p(0)?.wedge(&p(1)?)?)
            }
            "schouten" => {
                arity(2)?;
                Value::Polyvector(p(0)?.schouten(&p(1)?)?)
            }
            "bracket" => {
                arity(2)?;
                Value::Free(spec.bracket(&args[0].as_free(n)?, &args[1].as_free(n)?)?)
            }
            "lie" => {
                arity(2)?;
                Value::Free(spec.lie_bracket(&args[0].as_free(n)?, &args[1].as_free(n)?)?)
            }
            _ => return Err(Error::UnknownIdentifier(name.to_string())),
        })
    }

    fn add(&self, a: Value, b: Value, negate: bool) -> Result<Value> {
        let n = self.n();
        let b = if negate {
            self.mul(Value::Poly(Poly::constant(n, Rational::from_integer((-1).into()))), b)?
        } else {
            b
        };
        if a.is_zero_poly() {
            return Ok(b);
        }
        if b.is_zero_poly() {
            return Ok(a);
        }
        Ok(match (&a, &b) {
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(p + q),
            (Value::Field(u), Value::Field(v)) => Value::Field(u + v),
            (Value::Polyvector(_), _) | (_, Value::Polyvector(_)) => {
                Value::Polyvector(&a.as_polyvector(n)? + &b.as_polyvector(n)?)
            }
            (Value::Free(_) | Value::Field(_), Value::Free(_) | Value::Field(_)) => {
                Value::Free(&a.as_free(n)? + &b.as_free(n)?)
            }
            _ => {
                return Err(Error::Type(format!("cannot add {} and {}", a.kind(), b.kind())));
            }
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        let (scalar, other) = match (a, b) {
            (Value::Poly(p), Value::Poly(q)) => return Ok(Value::Poly(&p * &q)),
            (Value::Poly(p), v) | (v, Value::Poly(p)) => (p, v),
            (a, b) => {
                return Err(Error::Type(format!(
                    "cannot multiply {} by {}; use `^` for wedge products and `F[a,b]` for brackets",
                    a.kind(),
                    b.kind()
                )))
            }
        };
        Ok(match other {
            Value::Field(v) => Value::Field(v.scale_poly(&scalar)),
            Value::Free(u) => Value::Free(u.scale_poly(&scalar)),
            Value::Polyvector(p) => Value::Polyvector(p.scale_poly(&scalar)),
            Value::KField(k) => {
                let comps: Vec<_> = k.components().map(|(phi, a)| (*phi, a.scale_poly(&scalar))).collect();
                Value::KField(KField::new(k.arity(), k.nvars(), comps)?)
            }
            Value::Poly(_) => unreachable!("handled above"),
        })
    }
}

/// Parse and evaluate one expression; `line` is used in error positions.
pub fn parse_expr(src: &str, env: &Env<'_>, line: usize) -> Result<Value> {
    let toks = lex(src, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: src.chars().count() + 1,
        env,
    };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}
