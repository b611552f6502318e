//! Runs the full acceptance suite and prints one pass/fail line per
//! criterion.  Every criterion must pass.

use geomforge::acceptance::{run_suite, selected_criteria};

#[test]
fn acceptance_criteria_all_pass() {
    let criteria = selected_criteria(None);
    let reports = run_suite(None);
    assert_eq!(criteria.len(), reports.len());

    let mut all_pass = true;
    for (criterion, report) in criteria.iter().zip(&reports) {
        let verdict = if report.pass() { "PASS" } else { "FAIL" };
        println!("{}: {verdict} — {}", criterion.id, criterion.title);
        if !report.pass() {
            all_pass = false;
            print!("{}", report.to_table());
        }
    }
    assert!(all_pass, "at least one acceptance criterion failed");
}
