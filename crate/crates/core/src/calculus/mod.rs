//! Graded derivations and brackets on a single chart.
//!
//! Everything here is chart-generic: the same code runs on a base chart and
//! on a cotangent chart. Vector-valued forms are [`MixedField`]s with
//! symmetric degree 1; scalar forms have symmetric degree 0.
//!
//! Conventions:
//! - `i_{φ⊗X} ω = φ ∧ i_X ω`, a derivation of degree `k-1`.
//! - `L_K = [i_K, d] = i_K d - (-1)^{k-1} d i_K`.
//! - `[K, L]^∧ = i_K L - (-1)^{(k-1)(l-1)} i_L K` with `i_K (ψ⊗X) = i_K ψ ⊗ X`.
//! - The Frölicher-Nijenhuis bracket is the unique `[K, L]` with
//!   `[L_K, L_L] = L_{[K,L]}`. It is evaluated by the closed expansion over
//!   `φ⊗∂_j`, `ψ⊗∂_m` with constant frames, and cross-checked against
//!   [`fn_bracket_oracle`], which reads the bracket off the commutator of Lie
//!   derivations.

mod derivation;
mod schouten;

pub use derivation::{derivation_extract, fn_bracket_oracle, DerivationHandle};
pub use schouten::schouten;

use crate::error::{Error, Result};
use crate::fields::{Basis, MixedField, SymIndex};

/// `(-1)^n` as "is negative".
pub(crate) fn odd(n: usize) -> bool {
    n % 2 == 1
}

pub(crate) fn require_vector_valued(what: &str, k: &MixedField) -> Result<()> {
    if k.sym_degree() == 1 || k.is_zero() {
        Ok(())
    } else {
        Err(Error::valence(format!(
            "{what} must be a vector-valued form, got bidegree {:?}",
            k.bidegree()
        )))
    }
}

/// Coordinate exterior derivative acting on the form factor only.
///
/// For `l = 0` this is `d`; for `l > 0` it is the flat covariant exterior
/// derivative in the chart's coordinate frame.
pub(crate) fn d_coordinate(field: &MixedField) -> MixedField {
    let chart = field.chart();
    let (k, l) = field.bidegree();
    let mut out = MixedField::zero(chart, k + 1, l);
    for (b, c) in field.terms() {
        for a in 0..chart.dim() {
            let Some((form, neg)) = b.form.prepend(a) else {
                continue;
            };
            let da = c.partial(a);
            if !da.is_zero() {
                out.accumulate_signed(Basis::new(form, b.sym.clone()), da, neg);
            }
        }
    }
    out
}

/// Exterior derivative of a scalar form.
pub fn exterior_d(omega: &MixedField) -> Result<MixedField> {
    omega.require_scalar_form()?;
    Ok(d_coordinate(omega))
}

/// Coefficient-wise partial derivative `∂_j` (the Lie derivative along the
/// coordinate field `∂_j`).
pub(crate) fn partial_field(field: &MixedField, j: usize) -> MixedField {
    field.map_coefficients(|c| c.partial(j))
}

/// `i_{∂_j}` on the form factor.
pub(crate) fn contract(field: &MixedField, j: usize) -> MixedField {
    let (k, l) = field.bidegree();
    let mut out = MixedField::zero(field.chart(), k.saturating_sub(1), l);
    for (b, c) in field.terms() {
        if let Some((form, neg)) = b.form.contract(j) {
            out.accumulate_signed(Basis::new(form, b.sym.clone()), c.clone(), neg);
        }
    }
    out
}

/// Insertion `i_K ω` of a vector-valued form `K` into the form factor of `ω`.
///
/// For scalar `ω` this is the insertion derivation of degree `k-1`; for
/// vector-valued `ω = ψ ⊗ X` it is `i_K ψ ⊗ X`, the operator behind the
/// Nijenhuis-Richardson bracket.
pub fn insert(k_field: &MixedField, omega: &MixedField) -> Result<MixedField> {
    require_vector_valued("insertion operand K", k_field)?;
    k_field.chart().ensure_same(omega.chart())?;
    let (k, _) = k_field.bidegree();
    let (q, lw) = omega.bidegree();
    let mut out = MixedField::zero(omega.chart(), (k + q).saturating_sub(1), lw);
    for (bk, ck) in k_field.terms() {
        let j = bk.sym.indices().next().expect("l = 1");
        for (bw, cw) in omega.terms() {
            let Some((contracted, neg1)) = bw.form.contract(j) else {
                continue;
            };
            let Some((form, neg2)) = bk.form.wedge(&contracted) else {
                continue;
            };
            out.accumulate_signed(Basis::new(form, bw.sym.clone()), ck * cw, neg1 != neg2);
        }
    }
    Ok(out)
}

/// Lie derivation `L_K ω = i_K dω - (-1)^{k-1} d i_K ω` on scalar forms.
pub fn lie_derivative(k_field: &MixedField, omega: &MixedField) -> Result<MixedField> {
    require_vector_valued("Lie derivation operand K", k_field)?;
    if !omega.is_scalar_form() {
        return Err(Error::valence(format!(
            "Lie derivation acts on scalar forms, got bidegree {:?}",
            omega.bidegree()
        )));
    }
    let k = k_field.form_degree();
    let first = insert(k_field, &d_coordinate(omega))?;
    let second = d_coordinate(&insert(k_field, omega)?);
    // (-1)^{k-1}: subtract when k is odd
    let out = if odd(k + 1) { &first + &second } else { &first - &second };
    Ok(out.with_bidegree(k + omega.form_degree(), 0))
}

/// Nijenhuis-Richardson bracket `[K, L]^∧ = i_K L - (-1)^{(k-1)(l-1)} i_L K`.
pub fn nr_bracket(k_field: &MixedField, l_field: &MixedField) -> Result<MixedField> {
    require_vector_valued("NR operand K", k_field)?;
    require_vector_valued("NR operand L", l_field)?;
    let (k, l) = (k_field.form_degree(), l_field.form_degree());
    let a = insert(k_field, l_field)?;
    let b = insert(l_field, k_field)?;
    let sign_neg = odd((k + 1) * (l + 1)); // (k-1)(l-1) ≡ (k+1)(l+1) mod 2
    let out = if sign_neg { &a + &b } else { &a - &b };
    Ok(out.with_bidegree((k + l).saturating_sub(1), 1))
}

/// Frölicher-Nijenhuis bracket of two vector-valued forms.
///
/// Writing `K = Σ_j K^j ⊗ ∂_j` and `L = Σ_m L^m ⊗ ∂_m`, each pair contributes
///
/// ```text
/// K^j ∧ ∂_j L^m ⊗ ∂_m - ∂_m K^j ∧ L^m ⊗ ∂_j
///   + (-1)^k (dK^j ∧ i_j L^m ⊗ ∂_m + i_m K^j ∧ dL^m ⊗ ∂_j)
/// ```
///
/// which is the decomposable formula with `[∂_j, ∂_m] = 0`.
pub fn fn_bracket(k_field: &MixedField, l_field: &MixedField) -> Result<MixedField> {
    require_vector_valued("FN operand K", k_field)?;
    require_vector_valued("FN operand L", l_field)?;
    k_field.chart().ensure_same(l_field.chart())?;
    let chart = k_field.chart();
    let n = chart.dim();
    let (k, l) = (k_field.form_degree(), l_field.form_degree());
    let kc = k_field.vector_components()?;
    let lc = l_field.vector_components()?;
    let dk: Vec<_> = kc.iter().map(d_coordinate).collect();
    let dl: Vec<_> = lc.iter().map(d_coordinate).collect();
    let sign_k = odd(k);
    let mut out = vec![MixedField::zero(chart, k + l, 0); n];
    for j in 0..n {
        if kc[j].is_zero() {
            continue;
        }
        for m in 0..n {
            if lc[m].is_zero() {
                continue;
            }
            let to_m = &(&kc[j] * &partial_field(&lc[m], j))
                + &(&dk[j] * &contract(&lc[m], j)).signed(sign_k);
            let to_j = &(&contract(&kc[j], m) * &dl[m]).signed(sign_k)
                - &(&partial_field(&kc[j], m) * &lc[m]);
            out[m] = &out[m] + &to_m;
            out[j] = &out[j] + &to_j;
        }
    }
    Ok(MixedField::from_vector_components(chart, k + l, &out))
}

/// Lie bracket of vector fields, `[X, Y] = X(Y^a) ∂_a - Y(X^a) ∂_a`.
pub fn lie_bracket(x: &MixedField, y: &MixedField) -> Result<MixedField> {
    if x.bidegree() != (0, 1) && !x.is_zero() || y.bidegree() != (0, 1) && !y.is_zero() {
        return Err(Error::valence("Lie bracket needs two vector fields"));
    }
    fn_bracket(x, y)
}

/// Extended insertion on `Ω(M; STM)`:
/// `i(φ⊗X_1∨…∨X_l)(ψ⊗V) = φ ∧ Σ_j i_{X_j}ψ ⊗ X_1∨…X̂_j…∨X_l∨V`.
pub fn extended_insert(a: &MixedField, b: &MixedField) -> Result<MixedField> {
    a.chart().ensure_same(b.chart())?;
    let (k, la) = a.bidegree();
    if la == 0 {
        if a.is_zero() {
            return Ok(MixedField::zero(a.chart(), 0, 0));
        }
        return Err(Error::valence("extended insertion needs symmetric degree l >= 1"));
    }
    let (p, m) = b.bidegree();
    let mut out = MixedField::zero(a.chart(), (p + k).saturating_sub(1), m + la - 1);
    for (ba, ca) in a.terms() {
        for pos in 0..ba.sym.len() {
            let j = ba.sym.0[pos] as usize;
            let rest: SymIndex = ba.sym.remove_at(pos);
            for (bb, cb) in b.terms() {
                let Some((contracted, neg1)) = bb.form.contract(j) else {
                    continue;
                };
                let Some((form, neg2)) = ba.form.wedge(&contracted) else {
                    continue;
                };
                out.accumulate_signed(Basis::new(form, rest.merge(&bb.sym)), ca * cb, neg1 != neg2);
            }
        }
    }
    Ok(out)
}
