//! Metric and connection calculus on `Ω(M; STM)`.
//!
//! Metrics come with their exact polynomial inverse and Christoffel symbols;
//! nothing is inverted symbolically. [`validate`] checks the data exactly.
//!
//! Conventions (signs track the form degree only):
//!
//! - `∇(f dx^I ⊗ ∂_J) = df ∧ dx^I ⊗ ∂_J + Σ_i dx^i ∧ f dx^I ⊗ ∇_{∂_i} ∂_J`,
//!   with `∇_{∂_i} ∂_j = Γ^c_{ij} ∂_c` extended to `∂_J` as a derivation;
//! - `δ_g(∂_j) = g_{jm} dx^m`, zero on forms;
//! - `δ'_g(dx^a) = g^{aj} ∂_j`, zero on vector fields;
//! - `D = ∇δ'_g + δ'_g∇`, which equals `½ [g̲, ·]` on `Γ(STM)` for the
//!   Levi-Civita connection, with `g̲ = Σ_{i,j} g^{ij} ∂_i ∨ ∂_j`.

mod file;
mod random;

pub use file::{metric_document, parse_metric_document};
pub use random::{random_metric, random_metric_with};

use std::fmt;

use crate::calculus::{d_coordinate, extended_insert, odd};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::fields::{Basis, MixedField, SymIndex};
use crate::polyring::{rat, Polynomial};

type Matrix = Vec<Vec<Polynomial>>;

fn zero_matrix(chart: &Chart) -> Matrix {
    vec![vec![Polynomial::zero(chart); chart.dim()]; chart.dim()]
}

/// A metric `g_{ij}` together with its inverse `g^{ij}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricData {
    chart: Chart,
    g: Matrix,
    ginv: Matrix,
}

impl MetricData {
    pub fn new(chart: &Chart, g: Matrix, ginv: Matrix) -> Result<Self> {
        let n = chart.dim();
        for m in [&g, &ginv] {
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidMetric(format!("expected {n}x{n} matrices")));
            }
            for p in m.iter().flatten() {
                chart.ensure_same(p.chart())?;
            }
        }
        Ok(MetricData {
            chart: chart.clone(),
            g,
            ginv,
        })
    }

    pub fn euclidean(chart: &Chart) -> Self {
        let mut g = zero_matrix(chart);
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = Polynomial::one(chart);
        }
        MetricData {
            chart: chart.clone(),
            ginv: g.clone(),
            g,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn g(&self, i: usize, j: usize) -> &Polynomial {
        &self.g[i][j]
    }

    pub fn ginv(&self, i: usize, j: usize) -> &Polynomial {
        &self.ginv[i][j]
    }

    /// `g̲ = Σ_{i,j} g^{ij} ∂_i ∨ ∂_j` as a `(0, 2)` field.
    pub fn contravariant_field(&self) -> MixedField {
        let mut out = MixedField::zero(&self.chart, 0, 2);
        for (i, row) in self.ginv.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.accumulate(Basis::new(Default::default(), SymIndex::from_word(&[i, j])), c.clone());
            }
        }
        out
    }

    /// Levi-Civita symbols `Γ^k_{ij} = ½ g^{kl} (∂_i g_{jl} + ∂_j g_{il} - ∂_l g_{ij})`.
    pub fn levi_civita(&self) -> ConnectionData {
        let n = self.chart.dim();
        let half = rat(1, 2);
        let mut gamma = vec![zero_matrix(&self.chart); n];
        for (k, gk) in gamma.iter_mut().enumerate() {
            for i in 0..n {
                for j in i..n {
                    let mut acc = Polynomial::zero(&self.chart);
                    for l in 0..n {
                        if self.ginv[k][l].is_zero() {
                            continue;
                        }
                        let s = &(&self.g[j][l].partial(i) + &self.g[i][l].partial(j)) - &self.g[i][j].partial(l);
                        acc = &acc + &(&self.ginv[k][l] * &s);
                    }
                    let acc = acc.scale(&half);
                    gk[j][i] = acc.clone();
                    gk[i][j] = acc;
                }
            }
        }
        ConnectionData {
            chart: self.chart.clone(),
            gamma,
            metric: Some(self.clone()),
        }
    }
}

/// Christoffel symbols `Γ^k_{ij}`, stored as `gamma[k][i][j]`, with an
/// optional metric.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionData {
    chart: Chart,
    gamma: Vec<Matrix>,
    metric: Option<MetricData>,
}

impl ConnectionData {
    pub fn new(chart: &Chart, gamma: Vec<Matrix>, metric: Option<MetricData>) -> Result<Self> {
        let n = chart.dim();
        if gamma.len() != n || gamma.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(Error::InvalidMetric(format!("expected {n}x{n}x{n} Christoffel symbols")));
        }
        if let Some(m) = &metric {
            chart.ensure_same(m.chart())?;
        }
        Ok(ConnectionData {
            chart: chart.clone(),
            gamma,
            metric,
        })
    }

    /// The flat connection, with the Euclidean metric attached.
    pub fn flat(chart: &Chart) -> Self {
        ConnectionData {
            chart: chart.clone(),
            gamma: vec![zero_matrix(chart); chart.dim()],
            metric: Some(MetricData::euclidean(chart)),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Polynomial {
        &self.gamma[k][i][j]
    }

    pub fn metric(&self) -> Option<&MetricData> {
        self.metric.as_ref()
    }

    fn require_metric(&self) -> Result<&MetricData> {
        self.metric
            .as_ref()
            .ok_or_else(|| Error::InvalidMetric("connection has no metric attached".into()))
    }
}

/// One failed consistency check, with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MetricNotSymmetric { i: usize, j: usize },
    InverseNotSymmetric { i: usize, j: usize },
    NotInverse { i: usize, k: usize },
    Torsion { k: usize, i: usize, j: usize },
    NotMetricCompatible { a: usize, i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::MetricNotSymmetric { i, j } => write!(f, "g({i},{j}) != g({j},{i})"),
            Violation::InverseNotSymmetric { i, j } => write!(f, "ginv({i},{j}) != ginv({j},{i})"),
            Violation::NotInverse { i, k } => write!(f, "sum_j g({i},j) ginv(j,{k}) is not delta"),
            Violation::Torsion { k, i, j } => write!(f, "gamma({k};{i},{j}) != gamma({k};{j},{i})"),
            Violation::NotMetricCompatible { a, i, j } => write!(f, "(nabla_{a} g)({i},{j}) != 0"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Check symmetry, `g · ginv = id`, torsion-freeness and `∇g = 0`.
pub fn validate(metric: &MetricData, conn: &ConnectionData) -> Result<ValidationReport> {
    metric.chart.ensure_same(&conn.chart)?;
    let chart = &metric.chart;
    let n = chart.dim();
    let mut report = ValidationReport::default();
    let mut push = |v| report.violations.push(v);
    for i in 0..n {
        for j in i + 1..n {
            if metric.g[i][j] != metric.g[j][i] {
                push(Violation::MetricNotSymmetric { i: i + 1, j: j + 1 });
            }
            if metric.ginv[i][j] != metric.ginv[j][i] {
                push(Violation::InverseNotSymmetric { i: i + 1, j: j + 1 });
            }
        }
    }
    for i in 0..n {
        for k in 0..n {
            let mut acc = Polynomial::zero(chart);
            for j in 0..n {
                acc = &acc + &(&metric.g[i][j] * &metric.ginv[j][k]);
            }
            let expect = if i == k { Polynomial::one(chart) } else { Polynomial::zero(chart) };
            if acc != expect {
                push(Violation::NotInverse { i: i + 1, k: k + 1 });
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if conn.gamma[k][i][j] != conn.gamma[k][j][i] {
                    push(Violation::Torsion {
                        k: k + 1,
                        i: i + 1,
                        j: j + 1,
                    });
                }
            }
        }
    }
    for a in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = metric.g[i][j].partial(a);
                for k in 0..n {
                    acc = &acc - &(&conn.gamma[k][a][i] * &metric.g[k][j]);
                    acc = &acc - &(&conn.gamma[k][a][j] * &metric.g[i][k]);
                }
                if !acc.is_zero() {
                    push(Violation::NotMetricCompatible {
                        a: a + 1,
                        i: i + 1,
                        j: j + 1,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Exterior covariant derivative `∇ : Ω^k(M; S^l TM) → Ω^{k+1}(M; S^l TM)`.
pub fn cov_exterior_diff(conn: &ConnectionData, a: &MixedField) -> Result<MixedField> {
    conn.chart.ensure_same(a.chart())?;
    let n = conn.chart.dim();
    let mut out = d_coordinate(a);
    for (b, c) in a.terms() {
        for i in 0..n {
            let Some((form, neg)) = b.form.prepend(i) else {
                continue;
            };
            for (pos, j) in b.sym.indices().enumerate() {
                for cc in 0..n {
                    let g = &conn.gamma[cc][i][j];
                    if g.is_zero() {
                        continue;
                    }
                    out.accumulate_signed(Basis::new(form.clone(), b.sym.replace_at(pos, cc)), g * c, neg);
                }
            }
        }
    }
    Ok(out)
}

/// `δ_g : Ω^k(M; S^l TM) → Ω^{k+1}(M; S^{l-1} TM)`.
pub fn delta_g(metric: &MetricData, a: &MixedField) -> Result<MixedField> {
    metric.chart.ensure_same(a.chart())?;
    let n = metric.chart.dim();
    let (k, l) = a.bidegree();
    let mut out = MixedField::zero(a.chart(), k + 1, l.saturating_sub(1));
    for (b, c) in a.terms() {
        for (pos, j) in b.sym.indices().enumerate() {
            let rest = b.sym.remove_at(pos);
            for m in 0..n {
                let g = &metric.g[j][m];
                if g.is_zero() {
                    continue;
                }
                let Some((form, neg)) = b.form.prepend(m) else {
                    continue;
                };
                out.accumulate_signed(Basis::new(form, rest.clone()), g * c, neg);
            }
        }
    }
    Ok(out)
}

/// `δ'_g : Ω^k(M; S^l TM) → Ω^{k-1}(M; S^{l+1} TM)`.
pub fn delta_g_prime(metric: &MetricData, a: &MixedField) -> Result<MixedField> {
    metric.chart.ensure_same(a.chart())?;
    let n = metric.chart.dim();
    let (k, l) = a.bidegree();
    let mut out = MixedField::zero(a.chart(), k.saturating_sub(1), l + 1);
    for (b, c) in a.terms() {
        for i in b.form.indices() {
            let (form, neg) = b.form.contract(i).expect("index present");
            for j in 0..n {
                let g = &metric.ginv[i][j];
                if g.is_zero() {
                    continue;
                }
                out.accumulate_signed(Basis::new(form.clone(), b.sym.push(j)), g * c, neg);
            }
        }
    }
    Ok(out)
}

/// `D(S) = ∇δ'_g S + δ'_g ∇S`; on `Γ(STM)` its kernel is the Killing tensors.
pub fn schouten_with_metric_defect(conn: &ConnectionData, s: &MixedField) -> Result<MixedField> {
    let metric = conn.require_metric()?;
    let a = cov_exterior_diff(conn, &delta_g_prime(metric, s)?)?;
    let b = delta_g_prime(metric, &cov_exterior_diff(conn, s)?)?;
    Ok((&a + &b).with_bidegree(s.form_degree(), s.sym_degree() + 1))
}

/// `L^∇_A ω = i_A ∇ω + (-1)^a ∇ i_A ω` for a scalar form `ω`.
pub fn nabla_lie(conn: &ConnectionData, a: &MixedField, omega: &MixedField) -> Result<MixedField> {
    conn.chart.ensure_same(a.chart())?;
    omega.require_scalar_form()?;
    let (ka, la) = a.bidegree();
    if la == 0 && !a.is_zero() {
        return Err(Error::valence("nabla_lie needs symmetric degree l >= 1"));
    }
    let first = extended_insert(a, &d_coordinate(omega))?;
    let second = cov_exterior_diff(conn, &extended_insert(a, omega)?)?;
    let out = if odd(ka) { &first - &second } else { &first + &second };
    Ok(out.with_bidegree(ka + omega.form_degree(), la.saturating_sub(1)))
}

/// `[α⊗F, β⊗G]_∇ = L^∇_{α⊗F}(β)·G - (-1)^{ab} L^∇_{β⊗G}(α)·F` over the
/// constant coordinate frames `F = ∂_J`, `G = ∂_K` (for which `[F, G] = 0`).
pub fn nabla_bracket(conn: &ConnectionData, a: &MixedField, b: &MixedField) -> Result<MixedField> {
    conn.chart.ensure_same(a.chart())?;
    conn.chart.ensure_same(b.chart())?;
    let (ka, la) = a.bidegree();
    let (kb, lb) = b.bidegree();
    let mut out = MixedField::zero(&conn.chart, ka + kb, (la + lb).saturating_sub(1));
    let flip = odd(ka * kb);
    let comps_a = a.sym_components();
    let comps_b = b.sym_components();
    for (fj, alpha) in &comps_a {
        let a_j = MixedField::tensor_sym(alpha, fj);
        for (gk, beta) in &comps_b {
            let b_k = MixedField::tensor_sym(beta, gk);
            if !fj.is_empty() {
                let t = nabla_lie(conn, &a_j, beta)?;
                out = &out + &MixedField::tensor_sym(&t, gk);
            }
            if !gk.is_empty() {
                let t = MixedField::tensor_sym(&nabla_lie(conn, &b_k, alpha)?, fj);
                out = if flip { &out + &t } else { &out - &t };
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
