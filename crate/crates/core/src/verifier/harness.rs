//! Random case generation, evaluation, witness minimization.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{CaseConfig, CaseReport, Report, Verdict, Witness};
use crate::calculus::exterior_d;
use crate::chart::Chart;
use crate::connection::{metric_document, random_metric_with, ConnectionData};
use crate::error::{Error, Result};
use crate::fields::{random_polynomial, Basis, MixedField};
use crate::polyring::{Monomial, Polynomial, Rational};

/// Shape of a generated input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Function,
    Vector,
    /// `(k, 0)`, `k` up to the form bound.
    Form,
    /// `(k, 0)` with `k >= 1`.
    FormPos,
    /// `dβ` with `β` of degree `k - 1`, `k >= 1`.
    Exact,
    /// `(k, 1)`.
    Vvf,
    /// `(k, 1)` with `k >= 1`.
    VvfPos,
    /// `(0, l)`.
    Sym,
    /// `(0, l)` with `l` up to 3.
    SymWide,
    /// `(k, l)` with `l >= 1`.
    Mixed,
    /// `(k, l)`.
    Any,
    /// `(k, l)`; for `l = 0`, a closed form half of the time.
    AnyOrClosed,
    /// `(k, 0)` on the cotangent chart.
    CotForm,
    /// Horizontal form on the cotangent chart, fiber-homogeneous.
    Horizontal,
}

pub(crate) struct Gen {
    rng: ChaCha8Rng,
    cfg: CaseConfig,
    pub base: Chart,
    pub cot: Chart,
}

impl Gen {
    fn new(cfg: &CaseConfig, dim: usize, seed: u64) -> Gen {
        let base = Chart::euclidean(dim);
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cfg: cfg.clone(),
            cot: Chart::cotangent(&base),
            base,
        }
    }

    fn upto(&mut self, lo: usize, hi: usize) -> usize {
        if hi <= lo {
            lo
        } else {
            self.rng.gen_range(lo..=hi)
        }
    }

    fn nonzero_poly(&mut self, chart: &Chart) -> Polynomial {
        loop {
            let p = random_polynomial(&mut self.rng, chart, self.cfg.deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Sum of one to three random basis terms of bidegree `(k, l)`.
    fn sparse(&mut self, chart: &Chart, k: usize, l: usize) -> MixedField {
        let n = chart.dim();
        let k = k.min(n);
        let terms = self.rng.gen_range(1..=3);
        let mut out = MixedField::zero(chart, k, l);
        for _ in 0..terms {
            let mut form: Vec<usize> = sample(&mut self.rng, n, k).into_vec();
            form.sort_unstable();
            let sym: Vec<usize> = (0..l).map(|_| self.rng.gen_range(0..n)).collect();
            let coeff = self.nonzero_poly(chart);
            let term = MixedField::term(chart, &form, &sym, coeff).expect("valid basis word");
            out = &out + &term;
        }
        out
    }

    fn form_degree(&mut self, lo: usize) -> usize {
        let hi = self.cfg.form.min(self.base.dim());
        self.upto(lo.min(hi), hi)
    }

    pub fn field(&mut self, kind: Kind) -> Result<MixedField> {
        let base = self.base.clone();
        let sym = self.cfg.sym;
        Ok(match kind {
            Kind::Function => self.sparse(&base, 0, 0),
            Kind::Vector => self.sparse(&base, 0, 1),
            Kind::Form => {
                let k = self.form_degree(0);
                self.sparse(&base, k, 0)
            }
            Kind::FormPos => {
                let k = self.form_degree(1);
                self.sparse(&base, k, 0)
            }
            Kind::Exact => {
                let k = self.form_degree(1);
                let beta = self.sparse(&base, k.saturating_sub(1), 0);
                exterior_d(&beta)?
            }
            Kind::Vvf => {
                let k = self.form_degree(0);
                self.sparse(&base, k, 1)
            }
            Kind::VvfPos => {
                let k = self.form_degree(1);
                self.sparse(&base, k, 1)
            }
            Kind::Sym => {
                let l = self.upto(0, sym);
                self.sparse(&base, 0, l)
            }
            Kind::SymWide => {
                let l = self.upto(0, 3);
                self.sparse(&base, 0, l)
            }
            Kind::Mixed => {
                let k = self.form_degree(0);
                let l = self.upto(1, sym);
                self.sparse(&base, k, l)
            }
            Kind::Any => {
                let k = self.form_degree(0);
                let l = self.upto(0, sym);
                self.sparse(&base, k, l)
            }
            Kind::AnyOrClosed => {
                let k = self.form_degree(0);
                let l = self.upto(0, sym);
                if l == 0 && self.rng.gen_bool(0.5) {
                    if k == 0 {
                        let c = Rational::from_integer(self.rng.gen_range(-3..=3).into());
                        MixedField::constant(&base, c)
                    } else {
                        exterior_d(&self.sparse(&base, k - 1, 0))?
                    }
                } else {
                    self.sparse(&base, k, l)
                }
            }
            Kind::CotForm => {
                let cot = self.cot.clone();
                let k = self.upto(0, self.cfg.form.min(cot.dim()));
                self.sparse(&cot, k, 0)
            }
            Kind::Horizontal => {
                let k = self.form_degree(0);
                let l = self.upto(0, sym);
                self.horizontal(k, l)
            }
        })
    }

    /// `Σ f(q) p^α dq^I` with `|α| = l`.
    fn horizontal(&mut self, k: usize, l: usize) -> MixedField {
        let (base, cot) = (self.base.clone(), self.cot.clone());
        let m = base.dim();
        let mut out = MixedField::zero(&cot, k, 0);
        for _ in 0..self.rng.gen_range(1..=3) {
            let mut form: Vec<usize> = sample(&mut self.rng, m, k).into_vec();
            form.sort_unstable();
            let q_part = self.nonzero_poly(&base);
            let var_map: Vec<usize> = (0..m).collect();
            let mut exps = vec![0u16; 2 * m];
            for _ in 0..l {
                exps[m + self.rng.gen_range(0..m)] += 1;
            }
            let p_part = Polynomial::monomial(&cot, Monomial::from_exponents(exps), Rational::from_integer(1.into()));
            let coeff = &q_part.relabel(&cot, &var_map) * &p_part;
            out = &out + &MixedField::term(&cot, &form, &[], coeff).expect("valid basis word");
        }
        out
    }

    pub fn metric(&mut self) -> ConnectionData {
        random_metric_with(&mut self.rng, &self.base, 1)
    }
}

/// One evaluated case: charts, optional connection, named inputs.
#[derive(Clone, Debug)]
pub(crate) struct Case {
    pub base: Chart,
    pub cot: Chart,
    pub conn: Option<ConnectionData>,
    pub inputs: Vec<(String, MixedField)>,
    pub pinned: bool,
}

impl Case {
    pub fn new(base: &Chart, inputs: Vec<(&str, MixedField)>) -> Case {
        Case {
            base: base.clone(),
            cot: Chart::cotangent(base),
            conn: None,
            inputs: inputs.into_iter().map(|(n, f)| (n.to_string(), f)).collect(),
            pinned: false,
        }
    }

    pub fn get(&self, name: &str) -> &MixedField {
        &self
            .inputs
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("case has no input `{name}`"))
            .1
    }

    pub fn conn(&self) -> &ConnectionData {
        self.conn.as_ref().expect("suite declares a metric")
    }
}

pub(crate) enum Claim {
    Eq {
        label: &'static str,
        lhs: MixedField,
        rhs: MixedField,
    },
    Holds {
        label: &'static str,
        ok: bool,
        detail: String,
    },
}

impl Claim {
    fn holds(&self) -> bool {
        match self {
            Claim::Eq { lhs, rhs, .. } => lhs == rhs,
            Claim::Holds { ok, .. } => *ok,
        }
    }
}

#[derive(Default)]
pub(crate) struct Outcome {
    pub claims: Vec<Claim>,
    pub detail: Option<String>,
}

impl Outcome {
    pub fn eq(mut self, label: &'static str, lhs: MixedField, rhs: MixedField) -> Self {
        self.claims.push(Claim::Eq { label, lhs, rhs });
        self
    }

    pub fn holds(mut self, label: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        self.claims.push(Claim::Holds {
            label,
            ok,
            detail: detail.into(),
        });
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    fn first_failure(&self) -> Option<&Claim> {
        self.claims.iter().find(|c| !c.holds())
    }
}

pub(crate) type Check = fn(&Case) -> Result<Outcome>;

pub(crate) struct Suite {
    pub id: &'static str,
    pub statement: &'static str,
    pub inputs: &'static [(&'static str, Kind)],
    pub check: Check,
    pub min_dim: usize,
    pub min_cases: usize,
    pub metric: bool,
    pub expected_failure: bool,
    pub pinned: Option<fn() -> Result<Case>>,
}

impl Suite {
    pub const fn new(id: &'static str, statement: &'static str, inputs: &'static [(&'static str, Kind)], check: Check) -> Suite {
        Suite {
            id,
            statement,
            inputs,
            check,
            min_dim: 1,
            min_cases: 0,
            metric: false,
            expected_failure: false,
            pinned: None,
        }
    }

    pub const fn min_dim(mut self, d: usize) -> Suite {
        self.min_dim = d;
        self
    }

    pub const fn min_cases(mut self, n: usize) -> Suite {
        self.min_cases = n;
        self
    }

    pub const fn with_metric(mut self) -> Suite {
        self.metric = true;
        self
    }

    pub const fn expected_failure(mut self) -> Suite {
        self.expected_failure = true;
        self
    }

    pub const fn pinned(mut self, f: fn() -> Result<Case>) -> Suite {
        self.pinned = Some(f);
        self
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of case `index` of `suite`, independent of evaluation order.
pub(crate) fn case_seed(seed: u64, suite: &str, index: usize) -> u64 {
    let tag = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    splitmix64(splitmix64(seed ^ tag).wrapping_add(index as u64))
}

fn case_dim(cfg: &CaseConfig, suite: &Suite, index: usize) -> usize {
    let hi = cfg.dim.max(suite.min_dim);
    suite.min_dim + index % (hi - suite.min_dim + 1)
}

pub(crate) fn generate(suite: &Suite, cfg: &CaseConfig, dim: usize, seed: u64) -> Result<Case> {
    let mut g = Gen::new(cfg, dim, seed);
    let conn = suite.metric.then(|| g.metric());
    let mut inputs = Vec::new();
    for &(name, kind) in suite.inputs {
        inputs.push((name.to_string(), g.field(kind)?));
    }
    Ok(Case {
        base: g.base,
        cot: g.cot,
        conn,
        inputs,
        pinned: false,
    })
}

fn evaluate(check: Check, case: &Case) -> Result<Outcome> {
    match catch_unwind(AssertUnwindSafe(|| check(case))) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(Error::valence(format!("evaluation panicked: {msg}")))
        }
    }
}

fn fails(check: Check, case: &Case) -> bool {
    evaluate(check, case).is_ok_and(|o| o.first_failure().is_some())
}

/// Greedily drop single monomials from the inputs while the case still
/// fails. Bounded by `budget` re-evaluations.
fn minimize(check: Check, case: &Case, mut budget: usize) -> Case {
    let mut best = case.clone();
    for slot in 0..best.inputs.len() {
        let terms: Vec<(Basis, Polynomial)> =
            best.inputs[slot].1.terms().map(|(b, c)| (b.clone(), c.clone())).collect();
        for (basis, coeff) in terms {
            for (mono, r) in coeff.terms() {
                if budget == 0 {
                    return best;
                }
                budget -= 1;
                let field = &best.inputs[slot].1;
                let chart = field.chart().clone();
                let single = Polynomial::monomial(&chart, mono.clone(), r.clone());
                let drop = MixedField::basis_term(&chart, basis.form.clone(), basis.sym.clone(), single);
                let mut trial = best.clone();
                trial.inputs[slot].1 = field - &drop;
                if trial.inputs[slot].1.is_zero() {
                    continue;
                }
                if fails(check, &trial) {
                    best = trial;
                }
            }
        }
    }
    best
}

fn witness(case: &Case, seed: u64, claim: &Claim) -> Witness {
    let (label, lhs, rhs) = match claim {
        Claim::Eq { label, lhs, rhs } => (*label, lhs.to_string(), rhs.to_string()),
        Claim::Holds { label, detail, .. } => (*label, detail.clone(), "holds".into()),
    };
    Witness {
        seed,
        dim: case.base.dim(),
        inputs: case.inputs.iter().map(|(n, f)| (n.clone(), f.to_string())).collect(),
        metric: case.conn.as_ref().and_then(metric_document),
        claim: label.to_string(),
        lhs,
        rhs,
    }
}

const MINIMIZE_BUDGET: usize = 300;

fn run_case(suite: &Suite, id: usize, case: Result<Case>, seed: u64) -> CaseReport {
    let case = match case {
        Ok(c) => c,
        Err(e) => {
            return CaseReport {
                id,
                verdict: Verdict::Error,
                witness: None,
                detail: Some(format!("generation failed: {e}")),
            }
        }
    };
    let pinned = case.pinned.then(|| "pinned case".to_string());
    match evaluate(suite.check, &case) {
        Err(e) => CaseReport {
            id,
            verdict: Verdict::Error,
            witness: Some(witness(
                &case,
                seed,
                &Claim::Holds {
                    label: "evaluation",
                    ok: false,
                    detail: e.to_string(),
                },
            )),
            detail: Some(e.to_string()),
        },
        Ok(outcome) => {
            let detail = match (pinned, outcome.detail.clone()) {
                (Some(p), Some(d)) => Some(format!("{p}: {d}")),
                (a, b) => a.or(b),
            };
            if outcome.first_failure().is_none() {
                return CaseReport {
                    id,
                    verdict: Verdict::Pass,
                    witness: None,
                    detail,
                };
            }
            let small = if case.pinned { case } else { minimize(suite.check, &case, MINIMIZE_BUDGET) };
            let outcome = evaluate(suite.check, &small).unwrap_or(outcome);
            let claim = outcome.first_failure().expect("minimized case still fails");
            CaseReport {
                id,
                verdict: Verdict::Fail,
                witness: Some(witness(&small, seed, claim)),
                detail,
            }
        }
    }
}

/// Tally of per-case details, for suites that classify their cases.
fn notes(cases: &[CaseReport]) -> Vec<String> {
    let mut counts: Vec<(String, usize)> = Vec::new();
    for d in cases.iter().filter_map(|c| c.detail.as_deref()) {
        if d.starts_with("pinned") || d.starts_with("generation") {
            continue;
        }
        let key = d.split(':').next().unwrap_or(d).to_string();
        match counts.iter_mut().find(|(k, _)| *k == key) {
            Some((_, n)) => *n += 1,
            None => counts.push((key, 1)),
        }
    }
    counts.into_iter().map(|(k, n)| format!("{n}/{} random cases: {k}", cases.len())).collect()
}

pub(crate) fn run(suite: &Suite, cfg: &CaseConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let count = cfg.cases.max(suite.min_cases);
    let offset = usize::from(suite.pinned.is_some());
    let mut cases: Vec<CaseReport> = (0..count)
        .into_par_iter()
        .map(|i| {
            let seed = case_seed(cfg.seed, suite.id, i);
            let dim = case_dim(cfg, suite, i);
            run_case(suite, i + offset, generate(suite, cfg, dim, seed), seed)
        })
        .collect();
    let mut notes = notes(&cases);
    if let Some(pin) = suite.pinned {
        let case = pin().map(|mut c| {
            c.pinned = true;
            c
        });
        cases.insert(0, run_case(suite, 0, case, 0));
    }
    let failures = cases.iter().filter(|c| c.verdict != Verdict::Pass).count();
    let passed = if suite.expected_failure {
        let found = cases.iter().any(|c| c.verdict == Verdict::Fail);
        if !found {
            notes.push("no failing case found; the identity is expected to fail".into());
        }
        let witnessed = suite.pinned.is_none() || cases[0].verdict == Verdict::Fail;
        if !witnessed {
            notes.push("pinned witness no longer violates the identity".into());
        }
        found && witnessed && cases.iter().all(|c| c.verdict != Verdict::Error)
    } else {
        failures == 0
    };
    Ok(Report {
        suite: suite.id.to_string(),
        statement: suite.statement.to_string(),
        config: cfg.clone(),
        cases,
        elapsed_ms: start.elapsed().as_millis() as u64,
        expected_failure: suite.expected_failure,
        passed,
        notes,
    })
}
