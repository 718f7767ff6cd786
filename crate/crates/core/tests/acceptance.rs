//! Acceptance suite: runs the eight experiment suites at their fixed seed
//! and prints one PASS/FAIL line per criterion, followed by the checks of
//! any failing criterion. Exits non-zero if any criterion fails.

use std::process::ExitCode;

use provlog_core::experiments::{Suite, DEFAULT_SEED};

fn main() -> ExitCode {
    let mut failed = 0;
    let mut details = String::new();
    println!("acceptance criteria (seed {DEFAULT_SEED})");
    for (k, suite) in Suite::ALL.into_iter().enumerate() {
        let report = suite.run(DEFAULT_SEED);
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let passed = report.checks.iter().filter(|c| c.passed).count();
        println!(
            "{status}  criterion {}  {:<14} {passed}/{} checks  {:.2} s",
            k + 1,
            suite.name(),
            report.checks.len(),
            report.elapsed_ms as f64 / 1000.0
        );
        if !report.passed() {
            failed += 1;
            details.push_str(&format!("\n{}:\n{}", suite.name(), report.table()));
        }
    }
    if failed > 0 {
        println!("{details}");
        println!("{failed} of {} criteria failed", Suite::ALL.len());
        ExitCode::FAILURE
    } else {
        println!("all {} criteria passed", Suite::ALL.len());
        ExitCode::SUCCESS
    }
}
