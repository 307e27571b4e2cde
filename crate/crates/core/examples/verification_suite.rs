//! Run every verification check with a fixed seed and print one line per check.

use std::time::Instant;

use igc::suite::{checks, CheckConfig};

fn main() {
    let cfg = CheckConfig {
        seed: std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0),
        ..CheckConfig::default()
    };
    let mut failed = 0;
    for check in checks() {
        let start = Instant::now();
        let report = check.run(&cfg);
        if !report.passed() {
            failed += 1;
        }
        println!("[criterion {:>2}] {report}  ({:.2?})", check.criterion, start.elapsed());
    }
    println!("{failed} failing checks");
}
