//! The full invariant lattice: every self-check suite on the default grid
//! with a thousand randomized cases.

use qce_core::verify::{run_all, GridSpec};

#[test]
fn every_suite_passes_on_the_default_grid() {
    let report = run_all(&GridSpec::default(), 1000, 20260809);
    for check in &report.checks {
        println!(
            "{:<28} cases {:>5}  max residual {:>12.3e}  tol {:>8.1e}  {}",
            check.name,
            check.cases,
            check.max_residual,
            check.tolerance,
            if check.passed() { "pass" } else { "FAIL" }
        );
        assert!(
            check.passed(),
            "{}: {} of {} cases violated tolerance {:.1e} (max residual {:.3e})",
            check.name,
            check.violations,
            check.cases,
            check.tolerance,
            check.max_residual
        );
    }
    assert!(report.passed());
}
