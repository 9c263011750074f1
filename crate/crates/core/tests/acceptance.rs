//! Runs every acceptance criterion, prints one PASS/FAIL line each, and exits
//! nonzero if any fails.

use edgemap::acceptance::{run_criterion, CRITERIA};

fn main() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA {
        let outcome = run_criterion(id);
        println!("{outcome}");
        if !outcome.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("all {CRITERIA} criteria pass");
    } else {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
