//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

use igc::suite::{checks, CheckConfig};

fn igc(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_igc"))
        .args(args)
        .output()
        .expect("igc binary runs");
    (
        String::from_utf8_lossy(&out.stdout).trim_end().to_string(),
        out.status.code().unwrap_or(-1),
    )
}

fn cli_criterion() -> Vec<String> {
    let mut problems = Vec::new();
    let examples: [(&[&str], &str); 3] = [
        (&["--dim", "2", "bracket", "lie", "d0", "x0*d1"], "d1"),
        (&["--dim", "2", "reduce", "cup(d0, d1)"], "d0 ^ d1"),
        (
            &["--dim", "2", "trivial?", "compose(d0, x0*d1)"],
            "false  witness: (0,1,{0},{1})",
        ),
    ];
    for (args, want) in examples {
        let (got, code) = igc(args);
        if got != want || code != 0 {
            problems.push(format!(
                "igc {}: got {got:?} (exit {code}), want {want:?}",
                args.join(" ")
            ));
        }
    }
    let (_, code) = igc(&["--dim", "2", "check"]);
    if code != 0 {
        problems.push(format!("igc check exited {code}, want 0"));
    }
    for check in checks() {
        let (_, code) = igc(&["--dim", "2", "check", "--invert", check.name]);
        if code != 3 {
            problems.push(format!("igc check --invert {} exited {code}, want 3", check.name));
        }
    }
    problems
}

fn main() -> ExitCode {
    let cfg = CheckConfig::default();
    let mut by_criterion: BTreeMap<u8, Vec<String>> = (1..=11).map(|c| (c, Vec::new())).collect();
    let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
    for check in checks() {
        let report = check.run(&cfg);
        *counts.entry(check.criterion).or_default() += 1;
        if !report.passed() {
            by_criterion
                .entry(check.criterion)
                .or_default()
                .push(report.to_string());
        }
    }
    by_criterion.insert(11, cli_criterion());
    counts.insert(11, 1);

    let mut failed = 0;
    for (criterion, problems) in &by_criterion {
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        let n = counts.get(criterion).copied().unwrap_or(0);
        println!(
            "criterion {criterion:>2}: {verdict}  [{n} check{}]",
            if n == 1 { "" } else { "s" }
        );
        for p in problems {
            println!("    {}", p.replace('\n', "\n    "));
        }
        if !problems.is_empty() {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        by_criterion.len() - failed,
        by_criterion.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
