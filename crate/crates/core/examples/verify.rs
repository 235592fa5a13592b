//! Runs the cross-validation suite and prints the worst deviation of each
//! check.

use polymer_tunneling::verify::{run_suite, VerifyOptions};

fn main() {
    let report = run_suite(false, VerifyOptions::default());
    let mut checks: Vec<&str> = report.records.iter().map(|r| r.check.as_str()).collect();
    checks.sort_unstable();
    checks.dedup();
    for check in checks {
        let w = report.worst(check).expect("check present");
        println!("{check:<32} {:.3e} (tolerance {:.0e}) {}", w.deviation, w.tolerance, if w.pass { "ok" } else { "FAIL" });
        if let Some(note) = &w.note {
            println!("    {note}");
        }
    }
    println!("all passed: {}", report.passed());
}
