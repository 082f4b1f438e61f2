use num_bigint::BigInt;

use crate::calculus::{exterior_d, insert};
use crate::error::{Error, Result};
use crate::fields::{Basis, MixedField, SymIndex};
use crate::polyring::{Polynomial, Rational};

/// A primitive of a closed form of degree at least 1, by the radial homotopy.
///
/// With `E = Σ x^a ∂_a`, a closed term `x^α dx^I` of weight `|α| + |I|`
/// satisfies `L_E = (|α| + |I|)·id`, and `L_E = d i_E` on closed forms, so
/// `Σ (1/weight) i_E(term)` is a primitive. Works on any chart.
pub fn poincare_primitive(omega: &MixedField) -> Result<MixedField> {
    omega.require_scalar_form()?;
    let chart = omega.chart();
    if omega.form_degree() == 0 {
        return if omega.is_zero() {
            Ok(MixedField::zero(chart, 0, 0))
        } else {
            Err(Error::ConstantHasNoPrimitive)
        };
    }
    if !exterior_d(omega)?.is_zero() {
        return Err(Error::NotClosed);
    }
    let mut euler = MixedField::zero(chart, 0, 1);
    for a in 0..chart.dim() {
        euler.accumulate(Basis::new(Default::default(), SymIndex(vec![a as u8])), Polynomial::var(chart, a));
    }
    let k = omega.form_degree();
    let mut weighted = MixedField::zero(chart, k, 0);
    for (b, c) in omega.terms() {
        for (mono, r) in c.terms() {
            let w = BigInt::from(k as u32 + mono.degree());
            let coeff = Polynomial::monomial(chart, mono.clone(), r / Rational::from_integer(w));
            weighted.accumulate(b.clone(), coeff);
        }
    }
    Ok(insert(&euler, &weighted)?.with_bidegree(k - 1, 0))
}
