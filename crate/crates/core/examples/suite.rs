use std::time::Instant;

use qmoyal_core::conformance::{run_check, CHECKS};
use qmoyal_core::QContext;

fn main() {
    let ctx = QContext::generic(2);
    let grid = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for name in CHECKS {
        let t = Instant::now();
        let reports = run_check(name, grid, &ctx).unwrap();
        println!("-- {name} ({:.2?})", t.elapsed());
        for r in reports {
            println!("{}", r.summary());
        }
    }
}
