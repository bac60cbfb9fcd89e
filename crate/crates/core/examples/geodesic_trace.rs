//! Trace the closed geodesic generating `O_{p/q}` in the reduced metric
//! and check that twice its length is `Λ_{2p-1}`.
//!
//! Run with `cargo run --example geodesic_trace [P Q]`. The trace is
//! written to `trace_P_Q.csv` in the current directory.

use std::fs::File;
use std::io::BufWriter;

use extremal::geodesic::{geodesic_length, trace_geodesic, DEFAULT_STEP_TOL};
use extremal::otsuki::{otsuki_lambda, solve_parameter, OtsukiParameter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (p, q) = match args[..] {
        [p, q] => (p, q),
        _ => (2, 3),
    };
    let param = OtsukiParameter::new(p, q)?;
    let a = solve_parameter(&param)?.value();
    let trace = trace_geodesic(a, &param, DEFAULT_STEP_TOL)?;
    let length = geodesic_length(&trace);
    let value = otsuki_lambda(&param)?.value;
    println!("a = {a:.15}");
    println!(
        "arcs = {}, panels per arc = {}",
        trace.arcs, trace.panels_per_arc
    );
    println!("2 * length = {:.15}", 2.0 * length.value);
    println!("8*pi*q*Phi = {value:.15}");
    println!(
        "closed = {}, mismatch = {:.2e}",
        length.closed, trace.closure_mismatch
    );

    let path = format!("trace_{p}_{q}.csv");
    trace.write_csv(BufWriter::new(File::create(&path)?), 12)?;
    println!("wrote {path}");
    Ok(())
}
