//! Complete elliptic integrals in the modulus convention `k`.
//!
//! Run with `cargo run --example elliptic_kernel`.

use std::f64::consts::FRAC_PI_2;

use extremal::elliptic::{complete_e, complete_k, complete_pi, dpi_dn};

fn main() -> extremal::Result<()> {
    println!(
        "{:>6} {:>20} {:>20} {:>12}",
        "k", "K(k)", "E(k)", "Legendre"
    );
    for i in 1..=9 {
        let k = i as f64 / 10.0;
        let kp = (1.0 - k * k).sqrt();
        let (kk, e) = (complete_k(k)?, complete_e(k)?);
        let legendre =
            e * complete_k(kp)? + complete_e(kp)? * kk - kk * complete_k(kp)? - FRAC_PI_2;
        println!("{k:>6.2} {kk:>20.16} {e:>20.16} {legendre:>12.1e}");
    }

    // Negative characteristics, as used for the Otsuki period integral.
    for n in [-0.5, -2.0, -10.0] {
        println!(
            "Pi({n}, 0.8) = {:.16}, dPi/dn = {:.16}",
            complete_pi(n, 0.8)?,
            dpi_dn(n, 0.8)?
        );
    }

    match complete_pi(1.0, 0.5) {
        Ok(v) => println!("unexpected value {v}"),
        Err(e) => println!("Pi(1, 0.5): {e}"),
    }
    Ok(())
}
