//! Bipolar Lawson and bipolar Otsuki surfaces, including the one metric
//! that attains the lower bound: the Klein bottle bipolar to `τ_{3,1}`.
//!
//! Run with `cargo run --example bipolar_surfaces`.

use extremal::bipolar::{bipolar_lawson_record, bipolar_otsuki_record, BipolarLawsonCase};
use extremal::lawson::LawsonParameter;
use extremal::otsuki::OtsukiParameter;

fn main() -> extremal::Result<()> {
    for (m, k) in [(1, 1), (2, 1), (3, 1), (5, 1), (5, 3), (7, 1)] {
        let param = LawsonParameter::new(m, k)?;
        let case = format!("{:?}", BipolarLawsonCase::classify(&param));
        match bipolar_lawson_record(&param) {
            Ok(r) => println!(
                "tau~_{m},{k} {case:<13} {:<6} index {:>2} value {:>12.8} margin {:e}",
                r.topology.to_string(),
                r.index,
                r.value,
                r.margin
            ),
            Err(e) => println!("tau~_{m},{k} {case:<13} skipped: {e}"),
        }
    }
    for (p, q) in [(2, 3), (5, 8), (7, 10)] {
        let r = bipolar_otsuki_record(&OtsukiParameter::new(p, q)?)?;
        println!(
            "O~_{p}/{q} index {:>2} value < {:.8}, margin {:.8}",
            r.index, r.value, r.margin
        );
    }
    Ok(())
}
