//! Polynomial-expression grammar shared by minimal polynomials, nice-basis
//! entries and chart generators.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' natural)?
//! atom   := integer | integer '/' positive-integer | symbol | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_poly::rational::fmt_rational;
use crate::exact_poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

/// Target algebra for [`Expr::eval`].
pub trait Evaluator {
    type Value: Clone;

    fn number(&self, c: &Rational) -> Self::Value;
    fn symbol(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;

    fn pow(&self, a: &Self::Value, n: u32) -> Self::Value {
        let mut acc = self.number(&Rational::one());
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { chars: src.chars().collect(), pos: 0 };
        p.skip_ws();
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
        }
        Ok(e)
    }

    pub fn eval<E: Evaluator>(&self, ev: &E) -> Result<E::Value> {
        Ok(match self {
            Expr::Num(c) => ev.number(c),
            Expr::Sym(s) => ev.symbol(s)?,
            Expr::Add(a, b) => ev.add(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Sub(a, b) => ev.sub(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Mul(a, b) => ev.mul(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Div(a, b) => ev.div(&a.eval(ev)?, &b.eval(ev)?)?,
            Expr::Pow(a, n) => ev.pow(&a.eval(ev)?, *n),
            Expr::Neg(a) => ev.neg(&a.eval(ev)?),
        })
    }

    /// Symbols in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Pow(a, _) | Expr::Neg(a) => a.collect_symbols(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(c) if !c.is_integer() => 5,
            Expr::Num(_) | Expr::Sym(_) => 6,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => f.write_str(&fmt_rational(c)),
            Expr::Sym(s) => f.write_str(s),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_operand(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_operand(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_operand(f, 2)?;
                f.write_str("*")?;
                b.write_operand(f, 3)
            }
            Expr::Div(a, b) => {
                let lhs = if a.precedence() < 2 { format!("({a})") } else { a.to_string() };
                let rhs = if b.precedence() < 3 || matches!(**b, Expr::Num(ref c) if !c.is_integer()) {
                    format!("({b})")
                } else {
                    b.to_string()
                };
                // "2/3" would be read back as a single rational literal
                if lhs.ends_with(|c: char| c.is_ascii_digit()) && rhs.starts_with(|c: char| c.is_ascii_digit()) {
                    write!(f, "({lhs})/{rhs}")
                } else {
                    write!(f, "{lhs}/{rhs}")
                }
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_operand(f, 3)
            }
            Expr::Pow(a, n) => {
                a.write_operand(f, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn location(&self) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, message: String) -> Error {
        let (line, column) = self.location();
        Error::Parse { line, column, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let n = self.integer().ok_or_else(|| self.error("expected a natural exponent after `^`".into()))?;
            let n = u32::try_from(&n).map_err(|_| self.error("exponent too large".into()))?;
            self.skip_ws();
            Ok(Expr::Pow(Box::new(base), n))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        let d = self.integer().expect("digit present");
                        if d.is_zero() {
                            return Err(self.error("zero denominator".into()));
                        }
                        self.skip_ws();
                        return Ok(Expr::Num(Rational::new(n, d)));
                    }
                }
                self.pos = save;
                self.skip_ws();
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.skip_ws();
                Ok(Expr::Sym(name))
            }
            Some('(') => {
                let open = self.location();
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                if !self.eat(')') {
                    let what = match self.peek() {
                        Some(c) => format!("found `{c}`"),
                        None => "reached end of input".into(),
                    };
                    return Err(self.error(format!(
                        "unbalanced parenthesis opened at column {}: expected `)`, {what}",
                        open.1
                    )));
                }
                Ok(e)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}
