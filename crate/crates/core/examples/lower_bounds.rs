//! Lower bounds for `sup Λ_n` on the torus and the Klein bottle.
//!
//! Run with `cargo run --example lower_bounds`.

use std::f64::consts::PI;

use extremal::bounds::{klein_bound, torus_bound};

fn main() -> extremal::Result<()> {
    println!(
        "{:>3} {:>16} {:>16} {:>10}",
        "n", "torus", "klein", "8*pi*n"
    );
    for n in 1..=8 {
        println!(
            "{n:>3} {:>16.10} {:>16.10} {:>10.4}",
            torus_bound(n)?.value,
            klein_bound(n)?.value,
            8.0 * PI * n as f64
        );
    }
    Ok(())
}
