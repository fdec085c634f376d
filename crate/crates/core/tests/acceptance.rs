//! Acceptance gate: runs every verification suite at its pinned instance
//! counts and prints one pass/fail line per criterion.
//!
//!     cargo test -p orderunit --test acceptance -- --nocapture

use orderunit::suites::{run_suite, SuiteName, SuiteSpec};

const ACCEPTANCE_SEED: u64 = 7;

#[test]
fn acceptance_criteria() {
    let mut outcomes = Vec::new();
    for name in SuiteName::all() {
        let spec = SuiteSpec::new(name, ACCEPTANCE_SEED);
        let report = run_suite(&spec).expect("suite runs");
        outcomes.extend(report.outcomes);
    }
    outcomes.sort_by_key(|o| o.id);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "criterion {:>2}: {} — {} ({})",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.label,
            o.detail
        );
        if !o.pass {
            failed.push(o.id);
        }
    }
    assert_eq!(outcomes.len(), 11, "all eleven criteria must report");
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
