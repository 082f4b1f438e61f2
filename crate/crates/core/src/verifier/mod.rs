//! Expression language, identity suites and reports.
//!
//! Every suite checks one formula exactly on random cases drawn from a
//! [`CaseConfig`]. Two suites document identities that fail; they pass only
//! when a violating case is found, and each carries a pinned witness that is
//! re-checked on every run.

mod eval;
mod expr;
mod harness;
mod report;
mod suites;

pub use eval::{parse_field, Env};
pub use expr::{arity, Expr, OPERATORS};
pub use report::{emit_report, CaseConfig, CaseReport, Format, Report, Verdict, Witness};

use crate::error::{Error, Result};

/// `(id, statement)` of every suite, in catalog order.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    suites::all().map(|s| (s.id, s.statement)).collect()
}

pub fn is_expected_failure(id: &str) -> Option<bool> {
    suites::find(id).map(|s| s.expected_failure)
}

pub fn run_identity_suite(id: &str, config: &CaseConfig) -> Result<Report> {
    let suite = suites::find(id).ok_or_else(|| Error::UnknownSuite(id.to_string()))?;
    harness::run(suite, config)
}

/// Run every suite in catalog order.
pub fn run_all(config: &CaseConfig) -> Result<Vec<Report>> {
    suites::all().map(|s| harness::run(s, config)).collect()
}

#[cfg(test)]
mod tests;
