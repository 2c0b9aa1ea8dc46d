//! Runs every acceptance criterion at its stated tolerance and prints one
//! PASS/FAIL line each. Lines go straight to the stderr handle so they show
//! even when test output is captured.

use qrefless::verify::{run_all, VerifyOptions};
use std::io::Write;
use std::time::Instant;

fn report(line: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

#[test]
fn acceptance() {
    let t0 = Instant::now();
    let results = run_all(&VerifyOptions::default());
    let total = t0.elapsed().as_secs_f64();
    for r in &results {
        report(&r.summary_line());
        for ck in r.checks.iter().filter(|c| !c.pass || !c.note.is_empty()) {
            report(&format!("    {} [{}]: {}", ck.name, if ck.pass { "ok" } else { "FAILED" }, ck.note));
        }
    }
    let runtime_ok = total < 600.0;
    report(&format!("{} full suite runtime {total:.1}s (limit 600s)", if runtime_ok { "PASS" } else { "FAIL" }));

    let failed: Vec<u8> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
    assert!(runtime_ok);
}

#[test]
fn qdilog_suite_is_fast() {
    let r = qrefless::verify::run_criterion(1, &VerifyOptions::default());
    report(&r.summary_line());
    assert!(r.pass);
    assert!(r.seconds < 30.0, "took {:.1}s", r.seconds);
}
