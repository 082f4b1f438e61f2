use std::fmt;
use std::sync::Arc;

use super::{d_coordinate, insert, lie_derivative, odd, require_vector_valued};
use crate::chart::Chart;
use crate::error::Result;
use crate::fields::MixedField;

type Action = dyn Fn(&MixedField) -> Result<MixedField> + Send + Sync;

/// A graded derivation of the algebra of scalar forms, given by its action.
///
/// Nothing checks that the action really is a derivation; see
/// [`derivation_extract`].
#[derive(Clone)]
pub struct DerivationHandle {
    chart: Chart,
    degree: i32,
    action: Arc<Action>,
}

impl fmt::Debug for DerivationHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivationHandle")
            .field("chart", &self.chart)
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl DerivationHandle {
    pub fn new<F>(chart: &Chart, degree: i32, action: F) -> Self
    where
        F: Fn(&MixedField) -> Result<MixedField> + Send + Sync + 'static,
    {
        DerivationHandle {
            chart: chart.clone(),
            degree,
            action: Arc::new(action),
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn apply(&self, omega: &MixedField) -> Result<MixedField> {
        (self.action)(omega)
    }

    pub fn exterior_d(chart: &Chart) -> Self {
        DerivationHandle::new(chart, 1, |w| Ok(d_coordinate(w)))
    }

    pub fn insertion(k_field: &MixedField) -> Self {
        let k = k_field.clone();
        DerivationHandle::new(k_field.chart(), k.form_degree() as i32 - 1, move |w| insert(&k, w))
    }

    pub fn lie(k_field: &MixedField) -> Self {
        let k = k_field.clone();
        DerivationHandle::new(k_field.chart(), k.form_degree() as i32, move |w| lie_derivative(&k, w))
    }

    /// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba`.
    pub fn commutator(a: &DerivationHandle, b: &DerivationHandle) -> Self {
        let (a, b) = (a.clone(), b.clone());
        let flip = odd((a.degree * b.degree).unsigned_abs() as usize);
        DerivationHandle::new(&a.chart.clone(), a.degree + b.degree, move |w| {
            let ab = a.apply(&b.apply(w)?)?;
            let ba = b.apply(&a.apply(w)?)?;
            Ok(if flip { &ab + &ba } else { &ab - &ba })
        })
    }

    /// `self - other`, both of the same degree.
    pub fn difference(&self, other: &DerivationHandle) -> Self {
        debug_assert_eq!(self.degree, other.degree);
        let (a, b) = (self.clone(), other.clone());
        DerivationHandle::new(&self.chart, self.degree, move |w| Ok(&a.apply(w)? - &b.apply(w)?))
    }
}

/// Decompose a derivation `D` of degree `k` as `D = L_K + i_L` with
/// `K ∈ Ω^k(TM)` and `L ∈ Ω^{k+1}(TM)`.
///
/// `K` is read off from `D x^a = i_K dx^a = K^a`, then `L` from the algebraic
/// remainder `(D - L_K) dx^a = L^a`. Only the values on coordinate functions
/// and differentials are consulted, so a handle that is not a derivation
/// yields some `(K, L)` that does not reproduce it.
pub fn derivation_extract(d: &DerivationHandle) -> Result<(MixedField, MixedField)> {
    let chart = d.chart();
    let n = chart.dim();
    let deg = d.degree();
    let k_deg = usize::try_from(deg).unwrap_or(0);
    let l_deg = usize::try_from(deg + 1).unwrap_or(0);

    let k_comps = (0..n)
        .map(|a| {
            if deg < 0 {
                Ok(MixedField::zero(chart, 0, 0))
            } else {
                d.apply(&MixedField::coordinate(chart, a))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let k_field = MixedField::from_vector_components(chart, k_deg, &k_comps);

    let remainder = if k_field.is_zero() {
        d.clone()
    } else {
        d.difference(&DerivationHandle::lie(&k_field))
    };
    let l_comps = (0..n)
        .map(|a| remainder.apply(&MixedField::differential(chart, a)))
        .collect::<Result<Vec<_>>>()?;
    let l_field = MixedField::from_vector_components(chart, l_deg, &l_comps);
    Ok((k_field, l_field))
}

/// Frölicher-Nijenhuis bracket via `[L_K, L_L] = L_{[K,L]}`.
pub fn fn_bracket_oracle(k_field: &MixedField, l_field: &MixedField) -> Result<MixedField> {
    require_vector_valued("FN operand K", k_field)?;
    require_vector_valued("FN operand L", l_field)?;
    k_field.chart().ensure_same(l_field.chart())?;
    let comm = DerivationHandle::commutator(&DerivationHandle::lie(k_field), &DerivationHandle::lie(l_field));
    let (k, _) = derivation_extract(&comm)?;
    Ok(k)
}

