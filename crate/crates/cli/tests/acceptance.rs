//! The ten acceptance criteria, one pass/fail line each.
//!
//! Criteria 1–9 run in process at full size. Criterion 10 runs the
//! `verify-all --quick` binary twice and compares the bytes. A criterion
//! also fails when it overruns its time budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rbound_lab::verify::{criterion, CRITERIA};

const BUDGET_SECS: [u64; 10] = [1, 5, 30, 10, 5, 60, 30, 300, 10, 600];

fn verify_all_quick() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rbound-lab"))
        .args(["verify-all", "--quick"])
        .output()
        .map_err(|e| format!("cannot run binary: {e}"))?;
    if !out.status.success() {
        return Err(format!("verify-all --quick exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> (bool, String) {
    match (verify_all_quick(), verify_all_quick()) {
        (Ok(a), Ok(b)) if a == b => (true, format!("two runs, {} identical bytes", a.len())),
        (Ok(a), Ok(b)) => (false, format!("runs differ ({} vs {} bytes)", a.len(), b.len())),
        (Err(e), _) | (_, Err(e)) => (false, e),
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    for (id, name) in CRITERIA {
        let start = Instant::now();
        let (passed, detail) = if id == 10 {
            determinism()
        } else {
            let o = criterion(id, false);
            (o.passed, o.detail)
        };
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(BUDGET_SECS[(id - 1) as usize]);
        let in_time = elapsed < budget;
        let ok = passed && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {name:<26} {}  {detail} [{:.2}s of {}s{}]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" }
        );
    }
    println!("acceptance: {}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
