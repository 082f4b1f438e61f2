use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sampling envelope of a suite run. A run is replayed exactly from the
/// same config.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseConfig {
    /// Largest base dimension; cases cycle through `1..=dim`.
    pub dim: usize,
    /// Bound on the total degree of coefficient polynomials.
    pub deg: u32,
    /// Bound on form degrees.
    pub form: usize,
    /// Bound on symmetric degrees.
    pub sym: usize,
    pub cases: usize,
    pub seed: u64,
}

impl Default for CaseConfig {
    fn default() -> Self {
        CaseConfig {
            dim: 3,
            deg: 2,
            form: 2,
            sym: 2,
            cases: 25,
            seed: 1,
        }
    }
}

impl CaseConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(format!("{what} must be positive")));
        if self.dim == 0 {
            return bad("dimension bound");
        }
        if self.deg == 0 {
            return bad("coefficient degree bound");
        }
        if self.form == 0 {
            return bad("form degree bound");
        }
        if self.sym == 0 {
            return bad("symmetric degree bound");
        }
        if self.cases == 0 {
            return bad("case count");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

/// Everything needed to replay a failing case: the case seed, the inputs in
/// the expression language, and both sides of the violated claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub dim: usize,
    pub inputs: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub statement: String,
    pub config: CaseConfig,
    pub cases: Vec<CaseReport>,
    pub elapsed_ms: u64,
    /// The suite documents a failing identity and must produce a witness.
    pub expected_failure: bool,
    /// Whether the run met its expectation.
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.cases.iter().filter(|c| c.verdict == verdict).count()
    }

    pub fn from_json(src: &str) -> serde_json::Result<Report> {
        serde_json::from_str(src)
    }

    /// Same report with timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    let status = if report.passed { "PASS" } else { "FAIL" };
    let expect = if report.expected_failure { " (expected failure)" } else { "" };
    let _ = writeln!(
        out,
        "{status} {}{expect}: {}  [{} pass, {} fail, {} error; {} ms]",
        report.suite,
        report.statement,
        report.count(Verdict::Pass),
        report.count(Verdict::Fail),
        report.count(Verdict::Error),
        report.elapsed_ms,
    );
    for note in &report.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    for case in &report.cases {
        if case.verdict == Verdict::Pass && case.detail.is_none() {
            continue;
        }
        let verdict = match case.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        };
        let _ = writeln!(out, "  case {} {verdict}", case.id);
        if let Some(d) = &case.detail {
            let _ = writeln!(out, "    {d}");
        }
        if let Some(w) = &case.witness {
            let _ = writeln!(out, "    seed {:#x}, dim {}", w.seed, w.dim);
            if let Some(m) = &w.metric {
                let _ = writeln!(out, "    metric: {}", m.trim_end().replace('\n', "; "));
            }
            for (name, value) in &w.inputs {
                let _ = writeln!(out, "    {name} = {value}");
            }
            let _ = writeln!(out, "    claim: {}", w.claim);
            let _ = writeln!(out, "    lhs = {}", w.lhs);
            let _ = writeln!(out, "    rhs = {}", w.rhs);
        }
    }
    out
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
    }
}
