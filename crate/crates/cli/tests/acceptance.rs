//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fns_core::verifier::{emit_report, run_identity_suite, CaseConfig, Format, Report, Verdict};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn run(id: &str, min_cases: usize) -> Result<Report, String> {
    let cfg = CaseConfig::default();
    let r = run_identity_suite(id, &cfg).map_err(|e| format!("{id}: {e}"))?;
    if !r.passed {
        return Err(emit_report(&r, Format::Text));
    }
    if !r.expected_failure && r.count(Verdict::Pass) < min_cases {
        return Err(format!("{id}: only {} passing cases", r.count(Verdict::Pass)));
    }
    Ok(r)
}

fn suites(ids: &[&str], min_cases: usize) -> Check {
    let mut cases = 0;
    for id in ids {
        cases += run(id, min_cases)?.cases.len();
    }
    let noun = if ids.len() == 1 { "suite" } else { "suites" };
    Ok(format!("{} {noun}, {cases} exact cases", ids.len()))
}

fn pinned_witness(id: &str) -> Check {
    let r = run(id, 0)?;
    let pin = &r.cases[0];
    let w = pin.witness.as_ref().ok_or(format!("{id}: pinned case has no witness"))?;
    if pin.verdict != Verdict::Fail || w.lhs == w.rhs {
        return Err(format!("{id}: pinned case does not violate the identity"));
    }
    let inputs: Vec<String> = w.inputs.iter().map(|(n, v)| format!("{n} = {v}")).collect();
    Ok(format!("{id} witness {}", inputs.join(", ")))
}

fn counterexample() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fns"))
        .args(["demo", "counterexample"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let wanted = [
        "{π*A, π*B}¹ = p2 * dp1",
        "d{π*A, π*B}¹ = -dp1^dp2",
        "obstruction: NotHorizontal",
    ];
    if !out.status.success() {
        return Err(format!("exit status {}\n{text}", out.status));
    }
    if let Some(missing) = wanted.iter().find(|w| !text.contains(*w)) {
        return Err(format!("missing `{missing}`\n{text}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("p2 * dp1, -dp1^dp2, NotHorizontal in {} ms", elapsed.as_millis()))
}

fn homomorphisms() -> Check {
    let start = Instant::now();
    let msg = suites(&["T35-1", "T35-2", "T35-3", "T35-4"], 25)?;
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{msg} in {} ms", elapsed.as_millis()))
}

fn commutators() -> Check {
    let mut ids: Vec<String> = (1..=16).map(|i| format!("L33-{i}")).collect();
    ids.extend(["L34-1".to_string(), "L34-2".to_string()]);
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
    suites(&ids, 25)
}

fn derivations() -> Check {
    let a = suites(&["D21-1", "D21-2", "D21-3", "D21-4", "D21-5", "NR", "FN-ORACLE"], 25)?;
    let b = suites(&["FN-JACOBI", "FN-ANTI"], 50)?;
    Ok(format!("{a}; {b}"))
}

fn poisson() -> Check {
    let a = suites(&["T23-HOM", "T23-SYMP", "GP1-ANTI", "GP2-JACOBI", "GP-EXACT"], 25)?;
    Ok(format!("{a}; {}", pinned_witness("GP1-JACOBI")?))
}

fn connection() -> Check {
    let ids = [
        "CONN-DELTA2",
        "CONN-ANTI",
        "CONN-NABLA-DELTA",
        "CONN-NB-FN",
        "CONN-NB-SCH",
        "CONN-D-SCH",
    ];
    Ok(format!("{}; {}", suites(&ids, 25)?, pinned_witness("NB-JACOBI")?))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("counterexample reproduction", counterexample),
        ("homomorphism suites", homomorphisms),
        ("commutation relations of lifts", commutators),
        ("derivation formulas and FN bracket", derivations),
        ("graded Poisson brackets", poisson),
        ("lift and pullback properties", || {
            suites(&["L32-2", "L32-3", "L32-4", "L32-SYMP"], 25)
        }),
        ("connection identities", connection),
        ("Schouten cross-oracle", || suites(&["SCH-X"], 50)),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("PASS criterion {}: {name} ({msg})", n + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}\n{msg}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
