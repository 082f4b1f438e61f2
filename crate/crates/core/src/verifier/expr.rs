//! Expression language.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := unary (('*' | '^' | '|' | '.') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INTEGER)?
//! atom    := INTEGER ('/' INTEGER)? | IDENT | IDENT '(' args? ')' | '(' expr ')'
//! ```
//!
//! All four product symbols mean the graded product; `^` directly followed by
//! an integer literal is a power. Unicode aliases: `∧` for `^`, `⊗` for `|`,
//! `∨` for `.`, `∂` for `v`, `·` for `*`, `−` for `-`, and sub/superscript
//! digits for digits. Error offsets count characters.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyring::Rational;

/// `(name, arity)` of every operator.
pub const OPERATORS: &[(&str, usize)] = &[
    ("d", 1),
    ("i", 2),
    ("L", 2),
    ("FN", 2),
    ("NR", 2),
    ("SCH", 2),
    ("XI", 2),
    ("rho", 1),
    ("H", 1),
    ("h", 1),
    ("pb", 1),
    ("pbinv", 2),
    ("gp1", 2),
    ("gp2", 2),
    ("I", 0),
    ("P", 1),
    ("nabla", 1),
    ("dg", 1),
    ("dgp", 1),
    ("Dop", 1),
    ("LN", 2),
    ("NB", 2),
];

pub fn arity(op: &str) -> Option<usize> {
    OPERATORS.iter().find(|(name, _)| *name == op).map(|&(_, n)| n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Symbol(String),
    Apply { op: String, args: Vec<Expr> },
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    /// Graded product, remembering which symbol was written.
    Product(Box<Expr>, char, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Group(Box<Expr>),
}

fn normalize(src: &str) -> Vec<char> {
    src.chars()
        .map(|c| match c {
            '∧' => '^',
            '⊗' => '|',
            '∨' => '.',
            '∂' => 'v',
            '·' => '*',
            '−' => '-',
            '₀'..='₉' => char::from(b'0' + (c as u32 - '₀' as u32) as u8),
            '⁰' => '0',
            '¹' => '1',
            '²' => '2',
            '³' => '3',
            '⁴'..='⁹' => char::from(b'4' + (c as u32 - '⁴' as u32) as u8),
            other => other,
        })
        .collect()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
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
            Err(self.unexpected(&format!("expected `{c}`")))
        }
    }

    fn unexpected(&mut self, what: &str) -> Error {
        match self.peek() {
            Some(c) => Error::syntax(self.pos, format!("{what}, found `{c}`")),
            None => Error::syntax(self.pos, format!("{what}, found end of input")),
        }
    }

    /// `^` followed by an integer literal.
    fn power_ahead(&mut self) -> bool {
        if self.peek() != Some('^') {
            return false;
        }
        let mut p = self.pos + 1;
        while self.chars.get(p).is_some_and(|c| c.is_whitespace()) {
            p += 1;
        }
        self.chars.get(p).is_some_and(char::is_ascii_digit)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(c @ ('*' | '|' | '.')) => {
                    self.pos += 1;
                    lhs = Expr::Product(Box::new(lhs), c, Box::new(self.unary()?));
                }
                Some('^') if !self.power_ahead() => {
                    self.pos += 1;
                    lhs = Expr::Product(Box::new(lhs), '^', Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.power_ahead() {
            self.expect('^')?;
            let at = self.pos;
            let n = self.integer()?;
            let n = u32::try_from(n).map_err(|_| Error::syntax(at, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Group(Box::new(inner)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(Error::syntax(at, "zero denominator"));
                    }
                    return Ok(Expr::Number(Rational::new(n, d)));
                }
                Ok(Expr::Number(Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if self.peek() != Some('(') {
                    return Ok(Expr::Symbol(name));
                }
                let Some(expected) = arity(&name) else {
                    return Err(Error::UnknownOperator(name));
                };
                self.pos += 1;
                let mut args = Vec::new();
                if !self.eat(')') {
                    loop {
                        args.push(self.expr()?);
                        if self.eat(')') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                if args.len() != expected {
                    return Err(Error::Arity {
                        op: name,
                        expected,
                        got: args.len(),
                    });
                }
                Ok(Expr::Apply { op: name, args })
            }
            _ => Err(self.unexpected("expected an expression")),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            chars: normalize(src),
            pos: 0,
        };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.unexpected("expected an operator or end of input"));
        }
        Ok(e)
    }

    /// Free symbols, in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Number(_) => {}
                Expr::Symbol(s) => {
                    if !out.contains(s) {
                        out.push(s.clone());
                    }
                }
                Expr::Apply { args, .. } => args.iter().for_each(|a| walk(a, out)),
                Expr::Neg(a) | Expr::Pow(a, _) | Expr::Group(a) => walk(a, out),
                Expr::Product(a, _, b) | Expr::Add(a, b) | Expr::Sub(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(r) => write!(f, "{r}"),
            Expr::Symbol(s) => write!(f, "{s}"),
            Expr::Apply { op, args } => {
                write!(f, "{op}(")?;
                for (n, a) in args.iter().enumerate() {
                    if n > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Pow(a, n) => write!(f, "{a}^{n}"),
            Expr::Product(a, op, b) => write!(f, "{a} {op} {b}"),
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
            Expr::Group(a) => write!(f, "({a})"),
        }
    }
}
