//! The canonical symplectic structure of a cotangent chart and its lifts.
//!
//! On `T*M` with coordinates `q^1..q^m, p_1..p_m`:
//!
//! - `Θ = Σ p_i dq^i`, `ω = -dΘ = Σ dq^i ∧ dp_i`;
//! - `ρ(dp_i) = ∂/∂q^i`, `ρ(dq^i) = -∂/∂p_i`, extended to forms by
//!   `ρ(φ) = Σ_{a,b} ρ^{ab} i_{∂_a} φ ⊗ ∂_b`;
//! - `H = ρ ∘ d`, `{f, g} = i_{H_f} dg` (so `{q^1, p_1} = -1`);
//! - `π*(f dx^I ⊗ ∂_J) = f(q) p_J dq^I`, multiplicative for the graded
//!   product, and `h = H ∘ π*`.

mod lift;
mod primitive;

pub use lift::{
    bracket_in_image, h_map, horizontal_representative, pullback, pullback_inverse, vertical_euler, Membership,
    Obstruction, ObstructionKind,
};
pub use primitive::poincare_primitive;

use crate::calculus::{exterior_d, insert, lie_derivative};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::fields::{Basis, MixedField, SymIndex};
use crate::polyring::Polynomial;

/// A Poisson bivector `ρ = ½ Σ ρ^{ab} ∂_a ∧ ∂_b` given by its skew matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonBivector {
    chart: Chart,
    components: Vec<Vec<Polynomial>>,
}

impl PoissonBivector {
    /// Validates skewness and the Jacobi identity on coordinate triples.
    pub fn new(chart: &Chart, components: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = chart.dim();
        if components.len() != n || components.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPoisson(format!("expected a {n}x{n} matrix")));
        }
        for row in &components {
            for c in row {
                chart.ensure_same(c.chart())?;
            }
        }
        for a in 0..n {
            for b in a..n {
                if !(&components[a][b] + &components[b][a]).is_zero() {
                    return Err(Error::InvalidPoisson(format!(
                        "component ({}, {}) is not skew",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        let rho = PoissonBivector {
            chart: chart.clone(),
            components,
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let jac = rho.jacobiator(a, b, c);
                    if !jac.is_zero() {
                        return Err(Error::InvalidPoisson(format!(
                            "Jacobi identity fails on coordinates ({}, {}, {}): {jac}",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(rho)
    }

    /// The canonical structure of a cotangent chart.
    pub fn canonical(chart: &Chart) -> Result<Self> {
        let m = chart.base_chart()?.dim();
        let n = chart.dim();
        let mut comps = vec![vec![Polynomial::zero(chart); n]; n];
        for i in 0..m {
            // ρ(dp_i) = ∂_{q^i}, ρ(dq^i) = -∂_{p_i}
            comps[m + i][i] = Polynomial::one(chart);
            comps[i][m + i] = -Polynomial::one(chart);
        }
        Ok(PoissonBivector {
            chart: chart.clone(),
            components: comps,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, a: usize, b: usize) -> &Polynomial {
        &self.components[a][b]
    }

    /// `{x^a, {x^b, x^c}} + cyclic`.
    fn jacobiator(&self, a: usize, b: usize, c: usize) -> Polynomial {
        let mut acc = Polynomial::zero(&self.chart);
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            for d in 0..self.chart.dim() {
                acc = &acc + &(&self.components[x][d] * &self.components[y][z].partial(d));
            }
        }
        acc
    }

    /// `ρ(φ) = Σ ρ^{ab} i_{∂_a} φ ⊗ ∂_b`; zero on functions.
    pub fn rho_extend(&self, phi: &MixedField) -> Result<MixedField> {
        self.chart.ensure_same(phi.chart())?;
        phi.require_scalar_form()?;
        let k = phi.form_degree();
        let n = self.chart.dim();
        let mut out = MixedField::zero(&self.chart, k.saturating_sub(1), 1);
        for (basis, c) in phi.terms() {
            for a in basis.form.indices() {
                let (form, neg) = basis.form.contract(a).expect("index present");
                for b in 0..n {
                    let r = &self.components[a][b];
                    if r.is_zero() {
                        continue;
                    }
                    out.accumulate_signed(Basis::new(form.clone(), SymIndex(vec![b as u8])), r * c, neg);
                }
            }
        }
        Ok(out)
    }

    /// `H(ψ) = ρ(dψ)`.
    pub fn hamiltonian(&self, psi: &MixedField) -> Result<MixedField> {
        let out = self.rho_extend(&exterior_d(psi)?)?;
        Ok(out.with_bidegree(psi.form_degree(), 1))
    }

    /// `{f, g} = i_{H_f} dg`.
    pub fn poisson_fn(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        f.chart().ensure_same(g.chart())?;
        let pf = self.graded_poisson_1(&MixedField::scalar(f.clone()), &MixedField::scalar(g.clone()))?;
        Ok(pf.as_polynomial().expect("0-form"))
    }

    /// `{φ, ψ}¹ = i(H(φ)) dψ`, of form degree `p + q`.
    pub fn graded_poisson_1(&self, phi: &MixedField, psi: &MixedField) -> Result<MixedField> {
        phi.chart().ensure_same(psi.chart())?;
        let out = insert(&self.hamiltonian(phi)?, &exterior_d(psi)?)?;
        Ok(out.with_bidegree(phi.form_degree() + psi.form_degree(), 0))
    }

    /// `{φ, ψ}² = L_{H(φ)} ψ`, of form degree `p + q`.
    pub fn graded_poisson_2(&self, phi: &MixedField, psi: &MixedField) -> Result<MixedField> {
        phi.chart().ensure_same(psi.chart())?;
        psi.require_scalar_form()?;
        lie_derivative(&self.hamiltonian(phi)?, psi)
    }
}

/// `Θ`, `ω` and `ρ` of a cotangent chart.
#[derive(Clone, Debug)]
pub struct CanonicalData {
    pub liouville: MixedField,
    pub symplectic: MixedField,
    pub rho: PoissonBivector,
}

pub fn canonical_structures(chart: &Chart) -> Result<CanonicalData> {
    let m = chart.base_chart()?.dim();
    let mut liouville = MixedField::zero(chart, 1, 0);
    let mut symplectic = MixedField::zero(chart, 2, 0);
    for i in 0..m {
        liouville = &liouville + &MixedField::term(chart, &[i], &[], Polynomial::var(chart, m + i))?;
        symplectic = &symplectic + &MixedField::term(chart, &[i, m + i], &[], Polynomial::one(chart))?;
    }
    Ok(CanonicalData {
        liouville,
        symplectic,
        rho: PoissonBivector::canonical(chart)?,
    })
}

fn canonical(chart: &Chart) -> Result<PoissonBivector> {
    PoissonBivector::canonical(chart)
}

/// `ρ(φ)` for the canonical structure of `φ`'s cotangent chart.
pub fn rho_extend(phi: &MixedField) -> Result<MixedField> {
    canonical(phi.chart())?.rho_extend(phi)
}

/// `H(ψ) = ρ(dψ)` for the canonical structure.
pub fn hamiltonian(psi: &MixedField) -> Result<MixedField> {
    canonical(psi.chart())?.hamiltonian(psi)
}

pub fn poisson_fn(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    canonical(f.chart())?.poisson_fn(f, g)
}

pub fn graded_poisson_1(phi: &MixedField, psi: &MixedField) -> Result<MixedField> {
    canonical(phi.chart())?.graded_poisson_1(phi, psi)
}

pub fn graded_poisson_2(phi: &MixedField, psi: &MixedField) -> Result<MixedField> {
    canonical(phi.chart())?.graded_poisson_2(phi, psi)
}

#[cfg(test)]
mod tests;
