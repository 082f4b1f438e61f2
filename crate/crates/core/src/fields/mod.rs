//! Mixed tensor fields `Ω^k(chart; S^l T chart)` in canonical form.
//!
//! A [`MixedField`] is a finite sum `Σ f · dx^I ⊗ ∂_J` with `I` strictly
//! increasing, `J` weakly increasing and polynomial coefficients `f`. The
//! space of all bidegrees forms a graded-commutative algebra for the form
//! degree: wedge on the exterior factor, symmetric product on the vector
//! factor. Symmetric words carry no multinomial weight, so `∂1 v ∂2` is a
//! single basis element.

mod index;
mod random;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

pub use crate::chart::{Chart, ChartKind};
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};
pub use index::{form_indices, sym_indices, Basis, FormIndex, SymIndex};
pub use random::{random_field, random_field_with, random_polynomial};

/// Unnormalized input term for [`MixedField::normalize`].
#[derive(Debug, Clone)]
pub struct RawTerm {
    pub form: Vec<usize>,
    pub sym: Vec<usize>,
    pub coeff: Polynomial,
}

impl RawTerm {
    pub fn new(form: &[usize], sym: &[usize], coeff: Polynomial) -> Self {
        RawTerm {
            form: form.to_vec(),
            sym: sym.to_vec(),
            coeff,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MixedField {
    chart: Chart,
    k: usize,
    l: usize,
    terms: BTreeMap<Basis, Polynomial>,
}

impl PartialEq for MixedField {
    /// Zero fields compare equal regardless of their bidegree tag.
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart
            && self.terms == other.terms
            && (self.terms.is_empty() || (self.k, self.l) == (other.k, other.l))
    }
}

impl Eq for MixedField {}

impl MixedField {
    pub fn zero(chart: &Chart, k: usize, l: usize) -> Self {
        MixedField {
            chart: chart.clone(),
            k,
            l,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(p: Polynomial) -> Self {
        let mut out = MixedField::zero(p.chart(), 0, 0);
        out.accumulate(Basis::scalar(), p);
        out
    }

    pub fn one(chart: &Chart) -> Self {
        MixedField::scalar(Polynomial::one(chart))
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        MixedField::scalar(Polynomial::constant(chart, c))
    }

    /// Coordinate function `x^i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        MixedField::scalar(Polynomial::var(chart, i))
    }

    /// Coordinate differential `dx^i`.
    pub fn differential(chart: &Chart, i: usize) -> Self {
        MixedField::basis_term(chart, FormIndex(vec![i as u8]), SymIndex::empty(), Polynomial::one(chart))
    }

    /// Coordinate vector field `∂_i`.
    pub fn vector(chart: &Chart, i: usize) -> Self {
        MixedField::basis_term(chart, FormIndex::empty(), SymIndex(vec![i as u8]), Polynomial::one(chart))
    }

    pub fn basis_term(chart: &Chart, form: FormIndex, sym: SymIndex, coeff: Polynomial) -> Self {
        let mut out = MixedField::zero(chart, form.len(), sym.len());
        out.accumulate(Basis::new(form, sym), coeff);
        out
    }

    /// `coeff · dx^{form} ⊗ ∂_{sym}` from unordered words.
    pub fn term(chart: &Chart, form: &[usize], sym: &[usize], coeff: Polynomial) -> Result<Self> {
        MixedField::normalize(chart, vec![RawTerm::new(form, sym, coeff)])
    }

    /// Bring raw terms into canonical form: sort form words with their
    /// permutation sign, kill repeated form indices, sort symmetric words and
    /// combine like terms.
    pub fn normalize(chart: &Chart, raw: Vec<RawTerm>) -> Result<Self> {
        let (k, l) = raw.first().map_or((0, 0), |t| (t.form.len(), t.sym.len()));
        let mut out = MixedField::zero(chart, k, l);
        for t in raw {
            if (t.form.len(), t.sym.len()) != (k, l) {
                return Err(Error::MixedDegrees(k, l, t.form.len(), t.sym.len()));
            }
            chart.ensure_same(t.coeff.chart())?;
            for &i in t.form.iter().chain(&t.sym) {
                if i >= chart.dim() {
                    return Err(Error::VariableOutOfRange {
                        index: i,
                        dim: chart.dim(),
                    });
                }
            }
            let Some((form, odd)) = FormIndex::from_word(&t.form) else {
                continue;
            };
            let coeff = if odd { -t.coeff } else { t.coeff };
            out.accumulate(Basis::new(form, SymIndex::from_word(&t.sym)), coeff);
        }
        Ok(out)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn form_degree(&self) -> usize {
        self.k
    }

    pub fn sym_degree(&self) -> usize {
        self.l
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, basis: &Basis) -> Polynomial {
        self.terms
            .get(basis)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.chart))
    }

    /// The polynomial behind a `(0,0)` field.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero(&self.chart));
        }
        ((self.k, self.l) == (0, 0)).then(|| self.coefficient(&Basis::scalar()))
    }

    /// Same field with a different bidegree tag; only meaningful for zero.
    pub fn with_bidegree(mut self, k: usize, l: usize) -> Self {
        debug_assert!(self.is_zero() || (self.k, self.l) == (k, l));
        self.k = k;
        self.l = l;
        self
    }

    pub(crate) fn accumulate(&mut self, basis: Basis, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!((basis.form.len(), basis.sym.len()), (self.k, self.l));
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Accumulate `sign · coeff` at `basis`.
    pub(crate) fn accumulate_signed(&mut self, basis: Basis, coeff: Polynomial, negative: bool) {
        self.accumulate(basis, if negative { -coeff } else { coeff });
    }

    fn check_compatible(&self, other: &MixedField) -> Result<(usize, usize)> {
        self.chart.ensure_same(&other.chart)?;
        if self.is_zero() {
            return Ok(other.bidegree());
        }
        if other.is_zero() || self.bidegree() == other.bidegree() {
            return Ok(self.bidegree());
        }
        Err(Error::MixedDegrees(self.k, self.l, other.k, other.l))
    }

    pub fn try_add(&self, other: &MixedField) -> Result<MixedField> {
        let (k, l) = self.check_compatible(other)?;
        let mut out = self.clone();
        out.k = k;
        out.l = l;
        for (b, c) in &other.terms {
            out.accumulate(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MixedField) -> Result<MixedField> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> MixedField {
        self.map_coefficients(|p| p.scale(c))
    }

    /// Multiply every coefficient by `±1`.
    pub fn signed(&self, negative: bool) -> MixedField {
        if negative {
            -self
        } else {
            self.clone()
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> MixedField {
        self.map_coefficients(|c| c * p)
    }

    /// Apply `f` to every coefficient, dropping terms that become zero.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> MixedField {
        let mut out = MixedField::zero(&self.chart, self.k, self.l);
        for (b, c) in &self.terms {
            out.accumulate(b.clone(), f(c));
        }
        out
    }

    /// Graded product: wedge on forms, symmetric product on vectors.
    pub fn product(&self, other: &MixedField) -> Result<MixedField> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = MixedField::zero(&self.chart, self.k + other.k, self.l + other.l);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                let Some((form, odd)) = ba.form.wedge(&bb.form) else {
                    continue;
                };
                let sym = ba.sym.merge(&bb.sym);
                out.accumulate_signed(Basis::new(form, sym), ca * cb, odd);
            }
        }
        Ok(out)
    }

    /// For `l = 1`: the scalar `k`-forms `K^a` with `K = Σ_a K^a ⊗ ∂_a`.
    pub fn vector_components(&self) -> Result<Vec<MixedField>> {
        if self.l != 1 && !self.is_zero() {
            return Err(Error::valence(format!(
                "expected a vector-valued form, got bidegree ({},{})",
                self.k, self.l
            )));
        }
        let mut comps = vec![MixedField::zero(&self.chart, self.k, 0); self.chart.dim()];
        for (b, c) in &self.terms {
            let a = usize::from(b.sym.0[0]);
            comps[a].accumulate(Basis::new(b.form.clone(), SymIndex::empty()), c.clone());
        }
        Ok(comps)
    }

    /// Inverse of [`vector_components`](Self::vector_components).
    pub fn from_vector_components(chart: &Chart, k: usize, comps: &[MixedField]) -> MixedField {
        let mut out = MixedField::zero(chart, k, 1);
        for (a, comp) in comps.iter().enumerate() {
            for (b, c) in &comp.terms {
                debug_assert!(b.sym.is_empty());
                out.accumulate(Basis::new(b.form.clone(), SymIndex(vec![a as u8])), c.clone());
            }
        }
        out
    }

    /// Split off the symmetric factor: `Σ_J ω_J ⊗ ∂_J` as (J, scalar form ω_J).
    pub fn sym_components(&self) -> BTreeMap<SymIndex, MixedField> {
        let mut out: BTreeMap<SymIndex, MixedField> = BTreeMap::new();
        for (b, c) in &self.terms {
            out.entry(b.sym.clone())
                .or_insert_with(|| MixedField::zero(&self.chart, self.k, 0))
                .accumulate(Basis::new(b.form.clone(), SymIndex::empty()), c.clone());
        }
        out
    }

    /// `ω ⊗ ∂_J` for a scalar form `ω`.
    pub fn tensor_sym(form: &MixedField, sym: &SymIndex) -> MixedField {
        let mut out = MixedField::zero(&form.chart, form.k, form.l + sym.len());
        for (b, c) in &form.terms {
            out.accumulate(Basis::new(b.form.clone(), b.sym.merge(sym)), c.clone());
        }
        out
    }

    pub fn is_scalar_form(&self) -> bool {
        self.l == 0 || self.is_zero()
    }

    pub(crate) fn require_scalar_form(&self) -> Result<()> {
        if self.is_scalar_form() {
            Ok(())
        } else {
            Err(Error::NotScalarForm(self.k, self.l))
        }
    }

    /// Largest total degree of any coefficient.
    pub fn coefficient_degree(&self) -> u32 {
        self.terms
            .values()
            .filter_map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Drop one term; used by witness minimization.
    pub fn without_term(&self, basis: &Basis) -> MixedField {
        let mut out = self.clone();
        out.terms.remove(basis);
        out
    }

    pub fn is_one(&self) -> bool {
        self.as_polynomial()
            .is_some_and(|p| p.is_constant() && p.constant_term().is_one())
    }
}

impl Add for &MixedField {
    type Output = MixedField;
    fn add(self, rhs: &MixedField) -> MixedField {
        self.try_add(rhs).expect("field add")
    }
}

impl Sub for &MixedField {
    type Output = MixedField;
    fn sub(self, rhs: &MixedField) -> MixedField {
        self.try_sub(rhs).expect("field sub")
    }
}

impl Mul for &MixedField {
    type Output = MixedField;
    fn mul(self, rhs: &MixedField) -> MixedField {
        self.product(rhs).expect("field product")
    }
}

impl Neg for &MixedField {
    type Output = MixedField;
    fn neg(self) -> MixedField {
        MixedField {
            chart: self.chart.clone(),
            k: self.k,
            l: self.l,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }
}

impl Neg for MixedField {
    type Output = MixedField;
    fn neg(self) -> MixedField {
        -&self
    }
}

impl Add for MixedField {
    type Output = MixedField;
    fn add(self, rhs: MixedField) -> MixedField {
        &self + &rhs
    }
}

impl Sub for MixedField {
    type Output = MixedField;
    fn sub(self, rhs: MixedField) -> MixedField {
        &self - &rhs
    }
}

impl std::iter::Sum for MixedField {
    /// Panics on an empty iterator: a zero needs a chart.
    fn sum<I: Iterator<Item = MixedField>>(mut iter: I) -> MixedField {
        let first = iter.next().expect("sum of an empty field iterator");
        iter.fold(first, |acc, f| &acc + &f)
    }
}
