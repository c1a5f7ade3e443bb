//! Coefficient expressions in configuration files: integers (and decimals),
//! identifiers, `+ - * / ^`, parentheses and `sqrt(...)`.

use crate::error::{Error, Result};
use crate::field::{parse_rational, ExactSqrt, ParamExpr, ParamSpace, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Num(Rational),
    Ident(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Sqrt(Box<Ast>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn schema(msg: impl Into<String>) -> Error {
    Error::SchemaError(msg.into())
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(schema(format!("unexpected character {c:?} in expression {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat_op('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| schema(format!("exponent must be a nonnegative integer, got {n}")))?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                other => Err(schema(format!("exponent must be a nonnegative integer literal, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                parse_rational(&n).map(Ast::Num).ok_or_else(|| schema(format!("bad number {n}")))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat_op('(') {
                    if name != "sqrt" {
                        return Err(schema(format!("unknown function {name}")));
                    }
                    let inner = self.expr()?;
                    if !self.eat_op(')') {
                        return Err(schema("missing ')'"));
                    }
                    Ok(Ast::Sqrt(Box::new(inner)))
                } else {
                    Ok(Ast::Ident(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(schema("missing ')'"));
                }
                Ok(e)
            }
            other => Err(schema(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(s: &str) -> Result<Ast> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(schema("empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(schema(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

impl Ast {
    pub fn has_sqrt(&self) -> bool {
        match self {
            Ast::Num(_) | Ast::Ident(_) => false,
            Ast::Sqrt(_) => true,
            Ast::Neg(a) | Ast::Pow(a, _) => a.has_sqrt(),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => a.has_sqrt() || b.has_sqrt(),
        }
    }

    pub fn identifiers(&self, out: &mut Vec<String>) {
        match self {
            Ast::Num(_) => {}
            Ast::Ident(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Ast::Neg(a) | Ast::Pow(a, _) | Ast::Sqrt(a) => a.identifiers(out),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
                a.identifiers(out);
                b.identifiers(out);
            }
        }
    }

    /// Evaluate in any field with square roots, resolving identifiers through
    /// `lookup`.
    pub fn eval<T: ExactSqrt>(&self, lookup: &dyn Fn(&str) -> Result<T>) -> Result<T> {
        Ok(match self {
            Ast::Num(q) => T::from_rational(q),
            Ast::Ident(n) => lookup(n)?,
            Ast::Neg(a) => -a.eval(lookup)?,
            Ast::Add(a, b) => a.eval(lookup)? + b.eval(lookup)?,
            Ast::Sub(a, b) => a.eval(lookup)? - b.eval(lookup)?,
            Ast::Mul(a, b) => a.eval(lookup)?.mul_ref(&b.eval(lookup)?),
            Ast::Div(a, b) => {
                let d = b.eval(lookup)?;
                let inv = d.try_inv().ok_or(Error::DivisionByZero)?;
                a.eval(lookup)?.mul_ref(&inv)
            }
            Ast::Pow(a, e) => a.eval(lookup)?.pow_u32(*e),
            Ast::Sqrt(a) => {
                let v = a.eval(lookup)?;
                v.sqrt_exact().ok_or_else(|| schema("square root of a negative or non-square value"))?
            }
        })
    }

    /// Exact value in Q(params); assigned parameters are substituted.
    pub fn to_exact(&self, space: &ParamSpace, values: &[Option<Rational>]) -> Result<ParamExpr> {
        if self.has_sqrt() {
            return Err(schema("sqrt(...) is only allowed with the float backend"));
        }
        self.eval(&|name: &str| -> Result<ParamExpr> {
            let i = space.index(name).ok_or_else(|| schema(format!("unknown parameter {name}")))?;
            Ok(match values.get(i).and_then(|v| v.clone()) {
                Some(q) => ParamExpr::constant(q),
                None => ParamExpr::var(i),
            })
        })
    }

    pub fn to_f64(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64> {
        let v = self.eval(&|name: &str| -> Result<f64> {
            lookup(name).ok_or_else(|| schema(format!("parameter {name} has no numeric value")))
        })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(schema("expression evaluates to a non-finite value"))
        }
    }
}

/// Parse and evaluate to an exact rational (no free identifiers allowed).
pub fn parse_rational_expr(s: &str) -> Result<Rational> {
    let ast = parse(s)?;
    if ast.has_sqrt() {
        return Err(schema("sqrt(...) is not rational"));
    }
    ast.eval(&|name: &str| -> Result<Rational> { Err(schema(format!("unexpected identifier {name}"))) })
}
