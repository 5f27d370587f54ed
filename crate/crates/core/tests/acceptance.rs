use std::process::ExitCode;

use kgroth_core::verify::{run_suite, Suite, VerifyOptions};

fn main() -> ExitCode {
    let results = run_suite(Suite::Full, VerifyOptions::default());
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
