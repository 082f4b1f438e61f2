//! Text form: `2/3 * x1^2 * x2 - x2 + 5`.
//!
//! Terms print in descending graded-lex order. A unit coefficient is omitted
//! in front of a non-constant monomial and exponent 1 is omitted.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::chart::Chart;
use crate::error::{Error, Result};

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn fmt_monomial(chart: &Chart, m: &Monomial) -> Vec<String> {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                chart.name(i).to_string()
            } else {
                format!("{}^{e}", chart.name(i))
            }
        })
        .collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = fmt_monomial(&self.chart, m);
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, fmt_rational(&abs));
            }
            f.write_str(&factors.join(" * "))?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(Error::syntax(start, "expected an integer"));
        }
        self.pos += digits;
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let first = rest.chars().next()?;
        if !first.is_alphabetic() && first != '_' {
            return None;
        }
        let len: usize = rest
            .chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .map(char::len_utf8)
            .sum();
        self.pos += len;
        Some(&self.src[start..self.pos])
    }
}

impl Polynomial {
    /// Parse the text form produced by `Display`.
    pub fn parse(chart: &Chart, src: &str) -> Result<Polynomial> {
        let mut cur = Cursor { src, pos: 0 };
        let mut out = Polynomial::zero(chart);
        let mut first = true;
        loop {
            let sign = if cur.eat('-') {
                -Rational::one()
            } else if cur.eat('+') || first {
                Rational::one()
            } else {
                break;
            };
            first = false;
            let (m, c) = parse_term(chart, &mut cur)?;
            out.add_term(m, c * sign);
            if cur.peek().is_none() {
                return Ok(out);
            }
        }
        Err(Error::syntax(cur.pos, "expected `+`, `-` or end of input"))
    }
}

fn parse_term(chart: &Chart, cur: &mut Cursor<'_>) -> Result<(Monomial, Rational)> {
    let mut exps = vec![0u16; chart.dim()];
    let mut coeff = Rational::one();
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = cur.uint()?;
                let mut r = Rational::from_integer(n.into());
                if cur.eat('/') {
                    let at = cur.pos;
                    let d = cur.uint()?;
                    if d.is_zero() {
                        return Err(Error::syntax(at, "zero denominator"));
                    }
                    r /= Rational::from_integer(d.into());
                }
                coeff *= r;
            }
            _ => {
                let at = cur.pos;
                let Some(name) = cur.ident() else {
                    return Err(Error::syntax(at, "expected a number or variable"));
                };
                let Some(var) = chart.index_of(name) else {
                    return Err(Error::syntax(at, format!("unknown variable `{name}`")));
                };
                let e = if cur.eat('^') {
                    let at = cur.pos;
                    u16::try_from(cur.uint()?)
                        .map_err(|_| Error::syntax(at, "exponent too large"))?
                } else {
                    1
                };
                exps[var] += e;
            }
        }
        if !cur.eat('*') {
            return Ok((Monomial::from_exponents(exps), coeff));
        }
    }
}
