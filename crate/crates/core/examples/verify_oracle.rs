//! Cross-check both solver variants against the breakpoint oracle and, for
//! tiny sizes, against exhaustive vertex enumeration.

use divrank::verify::{run_verify, VerifyConfig};

fn main() {
    for (m, n) in [(7, 2), (7, 3), (50, 5), (200, 10)] {
        let report = run_verify(&VerifyConfig {
            count: 100,
            m,
            n,
            seed: 42,
            alpha: 0.5,
            parallel: true,
        });
        println!(
            "m = {m:>3}, n = {n:>2}: {} checked, {} against brute force, {} mismatches",
            report.checked,
            report.with_brute_force,
            report.mismatches.len()
        );
        for mismatch in &report.mismatches {
            println!("  {mismatch}");
        }
    }
}
