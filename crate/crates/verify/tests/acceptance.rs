//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

use std::process::ExitCode;

fn main() -> ExitCode {
    let outcomes = sclkit_verify::run_all();
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
