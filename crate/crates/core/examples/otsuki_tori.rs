//! Otsuki tori: solve `Ω(a) = pπ/q` for each admissible `p/q` and compare
//! `Λ_{2p-1} = 8πqΦ(a)` with the lower bound for tori.
//!
//! Run with `cargo run --example otsuki_tori [MAX_Q]`.

use extremal::otsuki::{enumerate_parameters, omega_closed, otsuki_lambda, solve_parameter};

fn main() -> extremal::Result<()> {
    let max_q = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    println!(
        "{:>8} {:>16} {:>6} {:>16} {:>16}",
        "p/q", "a", "index", "value", "margin"
    );
    for param in enumerate_parameters(max_q) {
        let a = solve_parameter(&param)?;
        let record = otsuki_lambda(&param)?;
        let residual = omega_closed(a.value())? - param.target_omega();
        assert!(residual.abs() < 1e-10);
        println!(
            "{:>8} {:>16.12} {:>6} {:>16.10} {:>16.10}",
            format!("{}/{}", param.p(), param.q()),
            a.value(),
            record.index,
            record.value,
            record.margin
        );
    }
    Ok(())
}
