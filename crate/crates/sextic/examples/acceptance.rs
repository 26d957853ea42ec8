//! Run the full acceptance corpus (the same one behind `sextic selftest`
//! and tests/acceptance.rs), printing one line per criterion.
//!
//! Run with: cargo run --release --example acceptance

use sextic::config::Limits;
use sextic::selftest::run_all;

fn main() {
    let limits = Limits::default();
    let results = run_all(&limits);
    let mut failed = 0;
    for r in &results {
        println!(
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} criteria, {} failed", results.len(), failed);
    std::process::exit(if failed == 0 { 0 } else { 1 });
}
