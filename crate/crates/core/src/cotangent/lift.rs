use num_traits::{One, Zero};

use super::{graded_poisson_1, hamiltonian};
use crate::calculus::{exterior_d, insert};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::fields::{Basis, MixedField, SymIndex};
use crate::polyring::{Monomial, Polynomial, Rational};

fn check_base(cot: &Chart, base: &Chart) -> Result<()> {
    cot.base_chart()?.ensure_same(base)
}

/// `π*(f dx^I ⊗ ∂_J) = f(q) p_J dq^I`.
pub fn pullback(cot: &Chart, a: &MixedField) -> Result<MixedField> {
    check_base(cot, a.chart())?;
    let m = a.chart().dim();
    let var_map: Vec<usize> = (0..m).collect();
    let mut out = MixedField::zero(cot, a.form_degree(), 0);
    for (b, c) in a.terms() {
        let mut exps = vec![0u16; 2 * m];
        for j in b.sym.indices() {
            exps[m + j] += 1;
        }
        let fiber = Polynomial::monomial(cot, Monomial::from_exponents(exps), Rational::one());
        let coeff = &c.relabel(cot, &var_map) * &fiber;
        out.accumulate(Basis::new(b.form.clone(), SymIndex::empty()), coeff);
    }
    Ok(out)
}

/// Inverse of [`pullback`] on horizontal forms whose coefficients are
/// homogeneous of degree `l` in the fiber variables.
pub fn pullback_inverse(phi: &MixedField, l: usize) -> Result<MixedField> {
    let cot = phi.chart();
    let base = cot.base_chart()?;
    phi.require_scalar_form()?;
    let m = base.dim();
    let mut out = MixedField::zero(base, phi.form_degree(), l);
    for (b, c) in phi.terms() {
        if b.form.indices().any(|i| i >= m) {
            let term = MixedField::basis_term(cot, b.form.clone(), SymIndex::empty(), c.clone());
            return Err(Error::NotHorizontal(term.to_string()));
        }
        for (mono, r) in c.terms() {
            let exps = mono.exponents();
            let sym: Vec<usize> = (0..m)
                .flat_map(|j| std::iter::repeat_n(j, usize::from(exps[m + j])))
                .collect();
            if sym.len() != l {
                return Err(Error::NotHomogeneous {
                    coefficient: c.to_string(),
                    degree: l,
                });
            }
            let coeff = Polynomial::monomial(base, Monomial::from_exponents(exps[..m].to_vec()), r.clone());
            out.accumulate(Basis::new(b.form.clone(), SymIndex::from_word(&sym)), coeff);
        }
    }
    Ok(out)
}

/// `I = Σ p_i ∂/∂p_i`.
pub fn vertical_euler(cot: &Chart) -> Result<MixedField> {
    let mut out = MixedField::zero(cot, 0, 1);
    for p in cot.fiber_vars()? {
        out.accumulate(Basis::new(Default::default(), SymIndex(vec![p as u8])), Polynomial::var(cot, p));
    }
    Ok(out)
}

/// `h(A) = H(π*A)`.
pub fn h_map(cot: &Chart, a: &MixedField) -> Result<MixedField> {
    hamiltonian(&pullback(cot, a)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionKind {
    /// The candidate has a `dp` factor.
    NotHorizontal,
    /// Some coefficient is not homogeneous of the requested fiber degree.
    NotHomogeneous,
    /// `dΦ ≠ dχ`.
    DifferentialMismatch,
}

/// Why `χ` is not `π*A` plus a closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub candidate: MixedField,
    pub kind: ObstructionKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// `χ - π*A` is closed.
    Image(MixedField),
    Obstructed(Obstruction),
}

impl Membership {
    pub fn representative(&self) -> Option<&MixedField> {
        match self {
            Membership::Image(a) => Some(a),
            Membership::Obstructed(_) => None,
        }
    }
}

/// Decide whether `χ ≡ π*A` modulo closed forms for some `A` of symmetric
/// degree `l`.
///
/// If `χ = π*A + β` with `dβ = 0`, then `dχ = dπ*A` and, since `π*A` is
/// horizontal with `L_I π*A = l π*A`, `π*A = (1/l) i_I dχ`. So the candidate
/// `Φ = (1/l) i_I dχ` is the only possibility: `A` exists iff `Φ` is
/// horizontal, fiber-homogeneous of degree `l`, and `dΦ = dχ`.
pub fn horizontal_representative(chi: &MixedField, l: usize) -> Result<Membership> {
    let cot = chi.chart();
    if l == 0 {
        return Err(Error::valence("horizontal_representative needs l >= 1"));
    }
    chi.require_scalar_form()?;
    let euler = vertical_euler(cot)?;
    let dchi = exterior_d(chi)?;
    let candidate = insert(&euler, &dchi)?
        .scale(&Rational::new(1.into(), (l as i64).into()))
        .with_bidegree(chi.form_degree(), 0);
    let obstructed = |kind| Ok(Membership::Obstructed(Obstruction { candidate: candidate.clone(), kind }));
    match pullback_inverse(&candidate, l) {
        Err(Error::NotHorizontal(_)) => obstructed(ObstructionKind::NotHorizontal),
        Err(Error::NotHomogeneous { .. }) => obstructed(ObstructionKind::NotHomogeneous),
        Err(e) => Err(e),
        Ok(a) => {
            if (&exterior_d(&candidate)? - &dchi).is_zero() {
                Ok(Membership::Image(a))
            } else {
                obstructed(ObstructionKind::DifferentialMismatch)
            }
        }
    }
}

/// Whether `[hA, hB]` lies in the image of `h`.
///
/// `[hA, hB] = H({π*A, π*B}¹)`, so this asks for a horizontal representative
/// of `{π*A, π*B}¹` of symmetric degree `l_A + l_B - 1`.
pub fn bracket_in_image(cot: &Chart, a: &MixedField, b: &MixedField) -> Result<Membership> {
    let l = (a.sym_degree() + b.sym_degree()).checked_sub(1).filter(|l| !l.is_zero());
    let Some(l) = l else {
        return Err(Error::valence("bracket_in_image needs l_A + l_B >= 2"));
    };
    let chi = graded_poisson_1(&pullback(cot, a)?, &pullback(cot, b)?)?;
    horizontal_representative(&chi, l)
}
