//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! The degree-seven check includes the commutator spot check with two
//! generators.

use std::process::ExitCode;

use casimir_core::checks::{run_all, Profile};
use casimir_core::sampling::DEFAULT_SEED;

fn main() -> ExitCode {
    let generators = [0usize, 1];
    let outcomes = run_all(Profile::Full, DEFAULT_SEED, Some(&generators[..]));
    let mut failed = 0;
    for o in &outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {} ({:.2} s): {}", o.id, o.name, o.elapsed.as_secs_f64(), o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
