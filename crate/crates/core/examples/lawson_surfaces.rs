//! Lawson surfaces `τ_{m,k}`: index, value and the two readings of the
//! index formula.
//!
//! Run with `cargo run --example lawson_surfaces`.

use extremal::lawson::{immersion_point, index_reading, lawson_lambda, LawsonParameter};

fn main() -> extremal::Result<()> {
    for (m, k) in [(1, 1), (2, 1), (3, 1), (3, 2), (5, 3), (7, 4)] {
        let param = LawsonParameter::new(m, k)?;
        let record = lawson_lambda(&param)?;
        let reading = index_reading(&param)?;
        println!(
            "tau_{m},{k} {:<6} j = {:>2} (alt {:>2})  value {:>12.8}  margin {:>12.8}",
            record.topology.to_string(),
            record.index,
            reading.alternative,
            record.value,
            record.margin
        );
    }

    let param = LawsonParameter::new(3, 2)?;
    let p = immersion_point(&param, 0.4, 1.1);
    println!(
        "tau_3,2(0.4, 1.1) = {p:.6?}, |p|^2 = {:.15}",
        p.iter().map(|c| c * c).sum::<f64>()
    );
    Ok(())
}
