//! Deterministic random fields for the fuzz harness.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{form_indices, sym_indices, Basis, MixedField};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational};

fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if cur.len() == nvars {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, max_degree, &mut Vec::new(), &mut out);
    out
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let n: i64 = loop {
        let n = rng.gen_range(-3..=3);
        if n != 0 {
            break n;
        }
    };
    let d: i64 = if rng.gen_bool(0.25) { 2 } else { 1 };
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Random polynomial of total degree at most `max_degree`; each monomial is
/// present with probability ½.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, chart: &Chart, max_degree: u32) -> Polynomial {
    let mut terms = Vec::new();
    for m in monomials_up_to(chart.dim(), max_degree) {
        if rng.gen_bool(0.5) {
            terms.push((m, small_rational(rng)));
        }
    }
    Polynomial::from_terms(chart, terms)
}

/// Random field of bidegree `(k, l)` drawn from `rng`.
pub fn random_field_with<R: Rng + ?Sized>(
    rng: &mut R,
    chart: &Chart,
    k: usize,
    l: usize,
    max_degree: u32,
) -> Result<MixedField> {
    if k > chart.dim() {
        return Err(Error::DegreeTooHigh {
            degree: k,
            dim: chart.dim(),
        });
    }
    let mut out = MixedField::zero(chart, k, l);
    for form in form_indices(chart.dim(), k) {
        for sym in sym_indices(chart.dim(), l) {
            if rng.gen_bool(0.5) {
                let coeff = random_polynomial(rng, chart, max_degree);
                out.accumulate(Basis::new(form.clone(), sym), coeff);
            }
        }
    }
    Ok(out)
}

/// Random field of bidegree `(k, l)`, fully determined by `seed`.
pub fn random_field(chart: &Chart, k: usize, l: usize, max_degree: u32, seed: u64) -> Result<MixedField> {
    random_field_with(&mut ChaCha8Rng::seed_from_u64(seed), chart, k, l, max_degree)
}
