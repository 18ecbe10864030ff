//! Prints one line per criterion; exits non-zero if a blocking one fails.

use std::process::ExitCode;

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let results = sigmorse_acceptance::run_all();
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<String> = results.iter().filter(|r| r.blocking && !r.pass()).map(|r| format!("C{}", r.id)).collect();
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
