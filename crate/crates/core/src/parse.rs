//! Recursive-descent parser for polynomial, polyvector and form
//! expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr    := ['-'] term { ('+' | '-') term }
//! term    := factor { '*' factor }
//! factor  := atom { '^' atom }
//! atom    := rational | ident | '@' ident | 'd' '(' ident ')' | '(' expr ')'
//! rational:= digits [ '/' digits ]
//! ```
//!
//! `^` after a scalar requires a non-negative integer literal exponent;
//! between exterior atoms it is the wedge product.  Implicit
//! multiplication is not accepted.  In form expressions the name `d`
//! directly followed by `(` is reserved for the differential-generator
//! former.  Errors carry the 0-based byte position in the input.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Polynomial;
use crate::polyvector::{DifferentialForm, Polyvector};
use crate::rat::Rat;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    At,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'@' => {
                out.push((i, Tok::At));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = src[start..i].parse().unwrap();
                let mut denom = BigInt::from(1);
                if i < bytes.len() && bytes[i] == b'/' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit()
                {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    denom = src[dstart..i].parse().unwrap();
                    if denom.is_zero() {
                        return Err(Error::parse(dstart, "zero denominator in rational literal"));
                    }
                }
                out.push((start, Tok::Num(Rat::new(numer, denom))));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(Error::parse(
                    i,
                    format!("unexpected character {:?}", src[i..].chars().next().unwrap()),
                ));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Num(Rat),
    Var(usize),
    Gen(usize),
    FormGen(usize),
    Neg(Box<Node>),
    Add(usize, Box<Node>, Box<Node>),
    Sub(usize, Box<Node>, Box<Node>),
    Mul(usize, Box<Node>, Box<Node>),
    /// `^` whose right operand was not an integer literal: wedge.
    Wedge(usize, Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Poly,
    Exterior,
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    mode: Mode,
    vars: &'a [String],
    gens: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a (usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'a (usize, Tok)> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| *p)
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<usize> {
        match self.bump() {
            Some((p, t)) if t == want => Ok(*p),
            Some((p, t)) => Err(Error::parse(*p, format!("expected {what}, found {t:?}"))),
            None => Err(Error::parse(self.end, format!("expected {what}, found end of input"))),
        }
    }

    fn parse_expr(&mut self) -> Result<Node> {
        let mut node = if matches!(self.peek(), Some((_, Tok::Minus))) {
            self.bump();
            Node::Neg(Box::new(self.parse_term()?))
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Some((p, Tok::Plus)) => {
                    let p = *p;
                    self.bump();
                    node = Node::Add(p, Box::new(node), Box::new(self.parse_term()?));
                }
                Some((p, Tok::Minus)) => {
                    let p = *p;
                    self.bump();
                    node = Node::Sub(p, Box::new(node), Box::new(self.parse_term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Node> {
        let mut node = self.parse_factor()?;
        while let Some((p, Tok::Star)) = self.peek() {
            let p = *p;
            self.bump();
            node = Node::Mul(p, Box::new(node), Box::new(self.parse_factor()?));
        }
        Ok(node)
    }

    fn parse_factor(&mut self) -> Result<Node> {
        let mut node = self.parse_atom()?;
        while let Some((p, Tok::Caret)) = self.peek() {
            let p = *p;
            self.bump();
            // Integer literal exponent makes a power; any other atom is a
            // wedge factor (exterior mode only).
            if let Some((np, Tok::Num(x))) = self.peek() {
                let np = *np;
                let x = x.clone();
                self.bump();
                let e = exponent_u32(&x, np)?;
                node = Node::Pow(Box::new(node), e);
            } else {
                if self.mode == Mode::Poly {
                    return Err(Error::parse(
                        self.here(),
                        "exponent must be a non-negative integer literal",
                    ));
                }
                let rhs = self.parse_atom()?;
                node = Node::Wedge(p, Box::new(node), Box::new(rhs));
            }
        }
        Ok(node)
    }

    fn parse_atom(&mut self) -> Result<Node> {
        match self.bump() {
            Some((_, Tok::Num(x))) => Ok(Node::Num(x.clone())),
            Some((p, Tok::Ident(name))) => {
                if self.mode == Mode::Exterior
                    && name == "d"
                    && matches!(self.peek(), Some((_, Tok::LParen)))
                {
                    self.bump();
                    let (ip, iname) = match self.bump() {
                        Some((ip, Tok::Ident(n))) => (*ip, n.clone()),
                        Some((ip, t)) => {
                            return Err(Error::parse(*ip, format!("expected variable name, found {t:?}")))
                        }
                        None => {
                            return Err(Error::parse(self.end, "expected variable name, found end of input"))
                        }
                    };
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == iname)
                        .ok_or(Error::UnknownIdent { pos: ip, name: iname })?;
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(Node::FormGen(idx))
                } else {
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| Error::UnknownIdent { pos: *p, name: name.clone() })?;
                    Ok(Node::Var(idx))
                }
            }
            Some((p, Tok::At)) => {
                if self.mode == Mode::Poly {
                    return Err(Error::parse(*p, "generators are not allowed in a polynomial"));
                }
                match self.bump() {
                    Some((ip, Tok::Ident(name))) => {
                        let idx = self
                            .gens
                            .iter()
                            .position(|g| g == name)
                            .ok_or_else(|| Error::UnknownIdent { pos: *ip, name: name.clone() })?;
                        Ok(Node::Gen(idx))
                    }
                    Some((ip, t)) => Err(Error::parse(*ip, format!("expected generator name, found {t:?}"))),
                    None => Err(Error::parse(self.end, "expected generator name, found end of input")),
                }
            }
            Some((_, Tok::LParen)) => {
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((p, t)) => Err(Error::parse(*p, format!("expected a value, found {t:?}"))),
            None => Err(Error::parse(self.end, "expected a value, found end of input")),
        }
    }
}

fn exponent_u32(x: &Rat, pos: usize) -> Result<u32> {
    if !x.denom().is_one() || x.is_negative() {
        return Err(Error::parse(pos, "exponent must be a non-negative integer literal"));
    }
    x.numer()
        .to_u32()
        .ok_or_else(|| Error::parse(pos, "exponent too large"))
}

/// Evaluation result of an exterior expression.
enum Val {
    Scalar(Polynomial),
    Pv(Polyvector),
    Form(DifferentialForm),
}

fn eval(node: &Node, n: usize) -> Result<Val> {
    match node {
        Node::Num(x) => Ok(Val::Scalar(Polynomial::constant(n, x.clone()))),
        Node::Var(i) => Ok(Val::Scalar(Polynomial::variable(n, *i))),
        Node::Gen(i) => Ok(Val::Pv(Polyvector::generator(n, *i))),
        Node::FormGen(i) => Ok(Val::Form(DifferentialForm::generator(n, *i))),
        Node::Neg(a) => Ok(match eval(a, n)? {
            Val::Scalar(p) => Val::Scalar(p.neg()),
            Val::Pv(v) => Val::Pv(v.neg()),
            Val::Form(w) => Val::Form(w.neg()),
        }),
        Node::Add(p, a, b) => add_vals(eval(a, n)?, eval(b, n)?, *p, false),
        Node::Sub(p, a, b) => add_vals(eval(a, n)?, eval(b, n)?, *p, true),
        Node::Mul(p, a, b) | Node::Wedge(p, a, b) => mul_vals(eval(a, n)?, eval(b, n)?, *p),
        Node::Pow(a, e) => Ok(match eval(a, n)? {
            Val::Scalar(x) => Val::Scalar(x.pow(*e)),
            Val::Pv(v) => Val::Pv(v.wedge_pow(*e, None)),
            Val::Form(w) => Val::Form(w.wedge_pow(*e, None)),
        }),
    }
}

fn add_vals(a: Val, b: Val, pos: usize, subtract: bool) -> Result<Val> {
    let fix = |v: Val| -> Val {
        if !subtract {
            return v;
        }
        match v {
            Val::Scalar(p) => Val::Scalar(p.neg()),
            Val::Pv(v) => Val::Pv(v.neg()),
            Val::Form(w) => Val::Form(w.neg()),
        }
    };
    let b = fix(b);
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(x.add(&y))),
        (Val::Scalar(x), Val::Pv(v)) => Ok(Val::Pv(Polyvector::from_poly(x).add(&v, None))),
        (Val::Pv(v), Val::Scalar(x)) => Ok(Val::Pv(v.add(&Polyvector::from_poly(x), None))),
        (Val::Scalar(x), Val::Form(w)) => Ok(Val::Form(DifferentialForm::from_poly(x).add(&w, None))),
        (Val::Form(w), Val::Scalar(x)) => Ok(Val::Form(w.add(&DifferentialForm::from_poly(x), None))),
        (Val::Pv(x), Val::Pv(y)) => Ok(Val::Pv(x.add(&y, None))),
        (Val::Form(x), Val::Form(y)) => Ok(Val::Form(x.add(&y, None))),
        _ => Err(Error::parse(pos, "cannot add a polyvector and a form")),
    }
}

fn mul_vals(a: Val, b: Val, pos: usize) -> Result<Val> {
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(x.mul(&y))),
        (Val::Scalar(x), Val::Pv(v)) | (Val::Pv(v), Val::Scalar(x)) => {
            Ok(Val::Pv(v.mul_poly(&x, None)))
        }
        (Val::Scalar(x), Val::Form(w)) | (Val::Form(w), Val::Scalar(x)) => {
            Ok(Val::Form(w.mul_poly(&x, None)))
        }
        (Val::Pv(x), Val::Pv(y)) => Ok(Val::Pv(x.wedge(&y, None))),
        (Val::Form(x), Val::Form(y)) => Ok(Val::Form(x.wedge(&y, None))),
        _ => Err(Error::parse(pos, "cannot multiply a polyvector and a form")),
    }
}

fn run(src: &str, mode: Mode, vars: &[String], gens: &[String]) -> Result<Val> {
    let toks = lex(src)?;
    let mut parser = Parser { toks: &toks, pos: 0, end: src.len(), mode, vars, gens };
    if parser.peek().is_none() {
        return Err(Error::parse(0, "empty expression"));
    }
    let node = parser.parse_expr()?;
    if let Some((p, t)) = parser.peek() {
        return Err(Error::parse(*p, format!("unexpected trailing {t:?}")));
    }
    eval(&node, vars.len())
}

/// Parses a polynomial over the named variables.
pub fn parse_polynomial(src: &str, vars: &[String]) -> Result<Polynomial> {
    match run(src, Mode::Poly, vars, &[])? {
        Val::Scalar(p) => Ok(p),
        _ => unreachable!("poly mode never yields exterior values"),
    }
}

/// Parses a polyvector field; `gens` names the `@` generators (for the
/// tangent context these are the variable names).
pub fn parse_polyvector(src: &str, vars: &[String], gens: &[String]) -> Result<Polyvector> {
    match run(src, Mode::Exterior, vars, gens)? {
        Val::Scalar(p) => Ok(Polyvector::from_poly(p)),
        Val::Pv(v) => Ok(v),
        Val::Form(_) => Err(Error::parse(0, "expected a polyvector, found a form expression")),
    }
}

/// Parses a differential form over the named variables.
pub fn parse_form(src: &str, vars: &[String]) -> Result<DifferentialForm> {
    match run(src, Mode::Exterior, vars, &[])? {
        Val::Scalar(p) => Ok(DifferentialForm::from_poly(p)),
        Val::Form(w) => Ok(w),
        Val::Pv(_) => Err(Error::parse(0, "expected a form, found a polyvector expression")),
    }
}
