//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

fn main() {
    let threads = sphdet::table::thread_count(None).unwrap_or(0);
    let outcomes = sphdet::acceptance::run_all(threads, |o| println!("{}", o.line()));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
