//! Text form of mixed fields: `-2 * x1 * dx1^dx3 | v1.v2 + (x2 + 1) * v2`.
//!
//! Differentials print as `d<name>`. Vector fields print as `v<i>` (1-based
//! position) on base charts and `v<name>` on cotangent charts, so `vq1` and
//! `vp1` are the coordinate fields of `T*M`. The DSL parser reads this form
//! back, see [`MixedField::parse`].

use std::fmt;

use num_traits::{One, Signed};

use super::{Basis, MixedField};
use crate::chart::Chart;
use crate::error::Result;
use crate::polyring::text::{fmt_monomial, fmt_rational};
use crate::polyring::Polynomial;

pub(crate) fn vector_token(chart: &Chart, i: usize) -> String {
    if chart.is_cotangent() {
        format!("v{}", chart.name(i))
    } else {
        format!("v{}", i + 1)
    }
}

fn basis_word(chart: &Chart, b: &Basis) -> String {
    let form = b
        .form
        .indices()
        .map(|i| format!("d{}", chart.name(i)))
        .collect::<Vec<_>>()
        .join("^");
    let sym = b
        .sym
        .indices()
        .map(|i| vector_token(chart, i))
        .collect::<Vec<_>>()
        .join(".");
    match (form.is_empty(), sym.is_empty()) {
        (true, true) => String::new(),
        (false, true) => form,
        (true, false) => sym,
        (false, false) => format!("{form} | {sym}"),
    }
}

/// Returns (negative, body) for one `coeff * word` term.
fn term_text(chart: &Chart, b: &Basis, coeff: &Polynomial) -> (bool, String) {
    let word = basis_word(chart, b);
    if word.is_empty() {
        let s = coeff.to_string();
        return match s.strip_prefix('-') {
            Some(rest) if coeff.len() == 1 => (true, rest.to_string()),
            _ if coeff.len() == 1 => (false, s),
            _ => (false, format!("({s})")),
        };
    }
    if coeff.len() == 1 {
        let (m, c) = coeff.terms().next().expect("one term");
        let mut factors = fmt_monomial(chart, m);
        if !c.abs().is_one() {
            factors.insert(0, fmt_rational(&c.abs()));
        }
        factors.push(word);
        (c.is_negative(), factors.join(" * "))
    } else {
        (false, format!("({coeff}) * {word}"))
    }
}

impl fmt::Display for MixedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (b, c)) in self.terms().enumerate() {
            let (neg, body) = term_text(self.chart(), b, c);
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl MixedField {
    /// Parse the text form on `chart`. Accepts the full expression DSL
    /// without operators bound to other charts.
    pub fn parse(chart: &Chart, src: &str) -> Result<MixedField> {
        crate::verifier::parse_field(chart, src)
    }
}
