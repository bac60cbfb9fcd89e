//! Lower bounds for `sup Λₙ` over all metrics on the torus and on the
//! Klein bottle:
//!
//! ```text
//! torus:        8π(n - 1 + π/√3)
//! Klein bottle: 8π(n - 1) + 12π E(2√2/3)
//! ```
//!
//! Every extremal record is compared against the bound for its topology
//! and index. A record whose value is strictly below the bound cannot be
//! maximal.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::elliptic::e_from_complement;
use crate::error::{invalid, Result};
use crate::record::Topology;

/// `π/√3`, the normalized functional of the equilateral flat torus divided by 8π.
pub fn pi_over_sqrt3() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| PI / 3f64.sqrt())
}

/// `E(2√2/3)`. The complementary parameter is exactly `1/9`; the bipolar
/// Lawson records evaluate `E` through the same call, so the `τ̃₃,₁`
/// equality holds to the last bit.
pub fn e_two_sqrt2_over_3() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| e_from_complement(1.0 / 9.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupLowerBound {
    pub topology: Topology,
    pub n: u64,
    pub value: f64,
}

fn check_index(n: u64) -> Result<()> {
    if n < 1 {
        Err(invalid("functional index must be >= 1"))
    } else {
        Ok(())
    }
}

pub fn torus_bound(n: u64) -> Result<SupLowerBound> {
    check_index(n)?;
    Ok(SupLowerBound {
        topology: Topology::Torus,
        n,
        value: 8.0 * PI * ((n - 1) as f64 + pi_over_sqrt3()),
    })
}

pub fn klein_bound(n: u64) -> Result<SupLowerBound> {
    check_index(n)?;
    Ok(SupLowerBound {
        topology: Topology::KleinBottle,
        n,
        value: 8.0 * PI * (n - 1) as f64 + 12.0 * PI * e_two_sqrt2_over_3(),
    })
}

pub fn bound_for(topology: Topology, n: u64) -> Result<SupLowerBound> {
    match topology {
        Topology::Torus => torus_bound(n),
        Topology::KleinBottle => klein_bound(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::complete_e;

    #[test]
    fn first_torus_bound() {
        let b = torus_bound(1).unwrap().value;
        assert!((b - 8.0 * PI * PI / 3f64.sqrt()).abs() < 1e-12);
        assert!((b - 45.586).abs() < 1e-3);
        let b2 = torus_bound(2).unwrap().value;
        assert!((b2 - 8.0 * PI * (1.0 + PI / 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn first_klein_bound() {
        let b = klein_bound(1).unwrap().value;
        let e = complete_e(2.0 * 2f64.sqrt() / 3.0).unwrap();
        assert!((b - 12.0 * PI * e).abs() < 1e-12);
        assert!((b - 41.99).abs() < 0.01, "{b}");
        let b2 = klein_bound(2).unwrap().value;
        assert!((b2 - (8.0 * PI + 12.0 * PI * e)).abs() < 1e-12);
    }

    #[test]
    fn bounds_step_by_8_pi() {
        for n in 1..200 {
            let t = torus_bound(n + 1).unwrap().value - torus_bound(n).unwrap().value;
            let k = klein_bound(n + 1).unwrap().value - klein_bound(n).unwrap().value;
            assert!((t - 8.0 * PI).abs() < 1e-11);
            assert!((k - 8.0 * PI).abs() < 1e-11);
        }
    }

    #[test]
    fn bounds_exceed_8_pi_n_minus_1() {
        for n in 1..500 {
            assert!(torus_bound(n).unwrap().value > 8.0 * PI * n as f64);
            assert!(klein_bound(n).unwrap().value > 8.0 * PI * (n - 1) as f64);
        }
    }

    #[test]
    fn zero_index_rejected() {
        assert!(torus_bound(0).is_err());
        assert!(klein_bound(0).is_err());
    }
}
