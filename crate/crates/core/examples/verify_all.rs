//! Run the whole harness and print a one-line summary per sweep.
//!
//! Run with `cargo run --release --example verify_all`.

use extremal::verify::{self, Limits, Verdict, DEFAULT_WARN_BELOW};

fn main() -> extremal::Result<()> {
    let limits = Limits::new(30, 100, 10_000)?;
    let report = verify::run(&limits, 1000, DEFAULT_WARN_BELOW)?;
    for s in &report.sweeps {
        println!(
            "{:<5} {:<60} worst {:>10.3e}",
            if s.passed { "ok" } else { "FAIL" },
            s.name,
            s.worst_margin
        );
    }
    let equalities: Vec<_> = report
        .records
        .iter()
        .filter(|r| r.is_whitelisted())
        .collect();
    println!(
        "{} records, {} equality case(s)",
        report.records.len(),
        equalities.len()
    );
    for r in equalities {
        println!(
            "  {} {} on the bound, margin {:e}",
            r.family, r.params, r.margin
        );
    }
    println!("verdict: {:?}", report.verdict);
    if report.verdict == Verdict::Fail {
        std::process::exit(1);
    }
    Ok(())
}
