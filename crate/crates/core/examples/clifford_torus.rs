//! The Clifford torus: lattice counting `N(r²)` and the records
//! `Λ_{N(r²)} = 4π²r²`.
//!
//! Run with `cargo run --example clifford_torus [MAX_R2]`.

use extremal::clifford::{clifford_records, disk_area_estimate};
use extremal::Params;

fn main() -> extremal::Result<()> {
    let max_r2 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    println!(
        "{:>5} {:>6} {:>10} {:>14} {:>14}",
        "r2", "N(r2)", "disk", "value", "margin"
    );
    for r in clifford_records(max_r2)? {
        let Params::Clifford { r2 } = r.params else {
            unreachable!()
        };
        println!(
            "{r2:>5} {:>6} {:>10.4} {:>14.8} {:>14.8}",
            r.index,
            disk_area_estimate(r2),
            r.value,
            r.margin
        );
    }
    Ok(())
}
