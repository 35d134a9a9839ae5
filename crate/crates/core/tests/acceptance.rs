//! One line per acceptance criterion, then a single assertion over all of them.
//!
//! `MATROIDLAB_R10_EXHAUSTIVE=1` adds the full R10 sweep to criterion 4
//! (slow; `MATROIDLAB_R10_CHECKPOINT=path` makes it resumable).

use matroidlab::verify::{run_criterion, VerifyOptions};

#[test]
fn acceptance() {
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
    let opts = VerifyOptions {
        r10_exhaustive: std::env::var("MATROIDLAB_R10_EXHAUSTIVE").is_ok_and(|v| v == "1"),
        checkpoint: std::env::var_os("MATROIDLAB_R10_CHECKPOINT").map(Into::into),
        workers,
        ..VerifyOptions::default()
    };
    println!();
    let mut failed = Vec::new();
    for id in 1..=9 {
        let o = run_criterion(id, &opts);
        println!(
            "criterion {}: {} ({}) {} [{:.0} ms]",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.title,
            o.detail,
            o.elapsed_ms.unwrap_or(0.0)
        );
        if !o.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
