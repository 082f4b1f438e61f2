use super::*;
use crate::error::Error;

fn small() -> CaseConfig {
    CaseConfig { cases: 6, ..CaseConfig::default() }
}

#[test]
fn catalog_ids_are_unique_and_findable() {
    let cat = catalog();
    let mut ids: Vec<_> = cat.iter().map(|(id, _)| id.to_ascii_lowercase()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), cat.len());
    assert_eq!(is_expected_failure("gp1-jacobi"), Some(true));
    assert_eq!(is_expected_failure("L33-1"), Some(false));
    assert_eq!(is_expected_failure("nope"), None);
}

#[test]
fn unknown_suite() {
    assert!(matches!(run_identity_suite("X-99", &small()), Err(Error::UnknownSuite(_))));
}

#[test]
fn bad_config_is_rejected() {
    let cfg = CaseConfig { cases: 0, ..CaseConfig::default() };
    assert!(matches!(run_identity_suite("L33-2", &cfg), Err(Error::InvalidConfig(_))));
}

#[test]
fn runs_are_deterministic() {
    let a = run_identity_suite("L33-3", &small()).unwrap();
    let b = run_identity_suite("L33-3", &small()).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    let c = run_identity_suite("L33-3", &CaseConfig { seed: 2, ..small() }).unwrap();
    assert!(c.passed);
}

#[test]
fn json_round_trip() {
    let r = run_identity_suite("NB-JACOBI", &small()).unwrap();
    let back = Report::from_json(&emit_report(&r, Format::Json)).unwrap();
    assert_eq!(back, r);
}

#[test]
fn sample_suites_pass() {
    for id in ["L33-2", "L33-16", "T35-1", "D21-1"] {
        let r = run_identity_suite(id, &small()).unwrap();
        assert!(r.passed, "{}", emit_report(&r, Format::Text));
        assert_eq!(r.count(Verdict::Pass), r.cases.len());
    }
}

#[test]
fn counterexample_is_reproduced() {
    let r = run_identity_suite("T35-5", &small()).unwrap();
    let text = emit_report(&r, Format::Text);
    assert!(r.passed);
    assert!(text.contains("p2 * dp1"), "{text}");
    assert!(text.contains("NotHorizontal"), "{text}");
}

#[test]
fn expected_failures_carry_witnesses() {
    for id in ["GP1-JACOBI", "NB-JACOBI"] {
        let r = run_identity_suite(id, &small()).unwrap();
        assert!(r.passed && r.expected_failure);
        let pin = &r.cases[0];
        assert_eq!(pin.verdict, Verdict::Fail);
        let w = pin.witness.as_ref().unwrap();
        assert_ne!(w.lhs, w.rhs);
    }
}
