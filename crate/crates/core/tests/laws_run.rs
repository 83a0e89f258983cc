use std::time::Instant;

use locdual_core::laws::{run_suite, Verdict, SUITES};

#[test]
fn every_suite_passes_for_two_seeds() {
    for seed in [0u64, 17] {
        for name in SUITES {
            let start = Instant::now();
            let r = run_suite(name, seed).unwrap();
            for f in &r.failures {
                eprintln!("{}", serde_json::to_string_pretty(f).unwrap());
            }
            eprintln!(
                "{name} seed {seed}: {} passed, {} skipped, {} failed in {:.2?}",
                r.passed,
                r.skipped,
                r.failed,
                start.elapsed()
            );
            assert_eq!(r.failed, 0, "{name} failed for seed {seed}");
            assert!(r.cases.iter().all(|c| c.verdict != Verdict::Fail));
        }
    }
}
