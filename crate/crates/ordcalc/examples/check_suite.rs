//! Runs the whole property suite on a small universe and prints a summary.

use ordcalc::harness::{registry, run_suite, UniverseSpec};
use ordcalc::SystemTag;

fn main() {
    let norm = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let spec = UniverseSpec::new(SystemTag::Stepwise, norm, 2);
    for r in run_suite(&spec, &registry(), 3) {
        let status = if r.passed() { "ok  " } else { "FAIL" };
        println!(
            "{status} {:<26} checked {:>9}  skipped {:>5}  failures {:>6}  {:.2}s",
            r.property_id, r.instances_checked, r.skipped, r.failures, r.elapsed
        );
        for c in r.counterexamples.iter().take(3) {
            println!("       {:?} expected {} got {}", c.inputs, c.expected, c.actual);
        }
    }
}
