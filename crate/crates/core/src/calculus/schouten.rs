//! Symmetric Schouten bracket on `Γ(STM)`, expanded over decomposables.
//!
//! A basis term `u ∂_{a1}∨…∨∂_{ak}` is read as the product of vector fields
//! `X_1 = u ∂_{a1}`, `X_r = ∂_{ar}`, and the bracket is
//! `Σ_{i,j} [X_i, Y_j] ∨ (remaining factors)`. Functions bracket as
//! `[f, Y_1∨…∨Y_l] = -Σ_j df(Y_j) · (remaining factors)`, which is the sign
//! that makes `π*` a homomorphism onto the canonical Poisson bracket
//! `{f, g} = i_{H_f} dg` (so `[x^1, ∂_1∨∂_2] = -∂_2`).

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::fields::{MixedField, SymIndex};
use crate::polyring::Polynomial;

/// One vector-field factor `coeff · ∂_dir`.
#[derive(Clone)]
struct Factor {
    coeff: Polynomial,
    dir: usize,
}

fn factors(chart: &Chart, coeff: &Polynomial, sym: &SymIndex) -> Vec<Factor> {
    sym.indices()
        .enumerate()
        .map(|(n, dir)| Factor {
            coeff: if n == 0 { coeff.clone() } else { Polynomial::one(chart) },
            dir,
        })
        .collect()
}

/// Symmetric product of the given factors as a `(0, n)` field.
fn product(chart: &Chart, scalar: Polynomial, fs: impl Iterator<Item = Factor>) -> MixedField {
    let mut coeff = scalar;
    let mut dirs = Vec::new();
    for f in fs {
        coeff = &coeff * &f.coeff;
        dirs.push(f.dir);
    }
    let sym = SymIndex::from_word(&dirs);
    let l = sym.len();
    MixedField::basis_term(chart, Default::default(), sym, coeff).with_bidegree(0, l)
}

fn without(fs: &[Factor], skip: usize) -> impl Iterator<Item = Factor> + '_ {
    fs.iter()
        .enumerate()
        .filter(move |(n, _)| *n != skip)
        .map(|(_, f)| f.clone())
}

/// `[f, U]` for a function `f` and `U ∈ Γ(S^l TM)`.
fn function_bracket(chart: &Chart, f: &Polynomial, u: &MixedField) -> MixedField {
    let l = u.sym_degree();
    let mut out = MixedField::zero(chart, 0, l - 1);
    for (b, c) in u.terms() {
        let fs = factors(chart, c, &b.sym);
        for (j, y) in fs.iter().enumerate() {
            // df(Y_j) = Y_j^a ∂_a f
            let df_y = &y.coeff * &f.partial(y.dir);
            out = &out - &product(chart, df_y, without(&fs, j));
        }
    }
    out
}

pub fn schouten(u: &MixedField, v: &MixedField) -> Result<MixedField> {
    u.chart().ensure_same(v.chart())?;
    for (name, x) in [("U", u), ("V", v)] {
        if x.form_degree() != 0 && !x.is_zero() {
            return Err(Error::valence(format!(
                "Schouten operand {name} must be a symmetric multivector field, got bidegree {:?}",
                x.bidegree()
            )));
        }
    }
    let chart = u.chart();
    let (lu, lv) = (u.sym_degree(), v.sym_degree());
    if u.is_zero() || v.is_zero() {
        return Ok(MixedField::zero(chart, 0, (lu + lv).saturating_sub(1)));
    }
    match (lu, lv) {
        (0, 0) => Ok(MixedField::zero(chart, 0, 0)),
        (0, _) => Ok(function_bracket(chart, &u.as_polynomial().expect("scalar"), v)),
        (_, 0) => Ok(-function_bracket(chart, &v.as_polynomial().expect("scalar"), u)),
        _ => {
            let mut out = MixedField::zero(chart, 0, lu + lv - 1);
            for (bu, cu) in u.terms() {
                let xs = factors(chart, cu, &bu.sym);
                for (bv, cv) in v.terms() {
                    let ys = factors(chart, cv, &bv.sym);
                    for (i, x) in xs.iter().enumerate() {
                        for (j, y) in ys.iter().enumerate() {
                            let rest = || without(&xs, i).chain(without(&ys, j));
                            // [x ∂_a, y ∂_b] = x ∂_a(y) ∂_b - y ∂_b(x) ∂_a
                            let xy = &x.coeff * &y.coeff.partial(x.dir);
                            if !xy.is_zero() {
                                let f = Factor { coeff: xy, dir: y.dir };
                                out = &out + &product(chart, Polynomial::one(chart), rest().chain([f]));
                            }
                            let yx = &y.coeff * &x.coeff.partial(y.dir);
                            if !yx.is_zero() {
                                let f = Factor { coeff: yx, dir: x.dir };
                                out = &out - &product(chart, Polynomial::one(chart), rest().chain([f]));
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}
