//! The Clifford torus as the flat square torus `R²/(2πZ)²`.
//!
//! Its eigenvalues are `n² + m²` for `(n, m) ∈ Z²`, so the counting
//! function `N(λ)` is the number of lattice points in the open disk of
//! radius `√λ`. For every `r²` that is a sum of two squares the metric is
//! extremal for `Λ_{N(r²)}` with value `4π²r²`.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{invalid, Result};
use crate::record::{ExtremalRecord, Family, Params, Topology, ValueKind};

/// Number of `(n, m) ∈ Z²` with `n² + m² <= bound`.
pub fn count_at_most(bound: u64) -> u64 {
    let r = bound.isqrt();
    (0..=r)
        .map(|n| {
            let column = 2 * (bound - n * n).isqrt() + 1;
            if n == 0 {
                column
            } else {
                2 * column
            }
        })
        .sum()
}

/// `N(λ) = #{(n, m) ∈ Z² : n² + m² < λ}`, counted in integers: for any
/// real `λ > 0` this equals `count_at_most(⌈λ⌉ - 1)`.
///
/// Returns 0 for `λ <= 0` and for NaN.
pub fn count_lattice(lambda: f64) -> u64 {
    if lambda.is_nan() || lambda <= 0.0 {
        return 0;
    }
    assert!(
        lambda < 1e15,
        "count_lattice is limited to λ < 1e15, got {lambda}"
    );
    count_at_most(lambda.ceil() as u64 - 1)
}

/// Whether `r2` is a sum of two integer squares (direct search).
pub fn representable(r2: u64) -> bool {
    (0..=r2.isqrt()).any(|n| {
        let rest = r2 - n * n;
        let m = rest.isqrt();
        m * m == rest
    })
}

/// A squared radius `r² = n² + m² >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeRadiusSquared(u64);

impl LatticeRadiusSquared {
    pub fn new(r2: u64) -> Result<Self> {
        if r2 < 1 {
            return Err(invalid("r² must be at least 1"));
        }
        if !representable(r2) {
            return Err(invalid(format!("{r2} is not a sum of two squares")));
        }
        Ok(Self(r2))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// `N(r²)`, the extremal index.
    pub fn index(self) -> u64 {
        count_at_most(self.0 - 1)
    }
}

pub fn clifford_record(r2: LatticeRadiusSquared) -> Result<ExtremalRecord> {
    ExtremalRecord::new(
        Family::Clifford,
        Params::Clifford { r2: r2.0 },
        Topology::Torus,
        r2.index(),
        4.0 * PI * PI * r2.0 as f64,
        ValueKind::Exact,
        "4*pi^2*r2",
    )
}

/// Records for every representable `r² <= max_r2`, ascending.
pub fn clifford_records(max_r2: u64) -> Result<Vec<ExtremalRecord>> {
    (1..=max_r2)
        .filter(|&r2| representable(r2))
        .map(|r2| clifford_record(LatticeRadiusSquared(r2)))
        .collect()
}

/// `π(r - √2/2)²`, the area of the disk whose lattice squares all lie in
/// the open disk of radius `r`; a lower bound for `N(r²)`.
pub fn disk_area_estimate(r2: u64) -> f64 {
    let r = (r2 as f64).sqrt();
    PI * (r - SQRT_2 / 2.0).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(lambda: f64) -> u64 {
        let r = lambda.max(0.0).sqrt().ceil() as i64 + 1;
        let mut count = 0;
        for n in -r..=r {
            for m in -r..=r {
                if ((n * n + m * m) as f64) < lambda {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_lattice(1.0), 1);
        assert_eq!(count_lattice(2.0), 5);
        assert_eq!(count_lattice(5.0), 13);
        assert_eq!(count_lattice(0.0), 0);
        assert_eq!(count_lattice(-3.0), 0);
        assert_eq!(count_lattice(f64::NAN), 0);
        assert_eq!(count_lattice(0.5), 1);
        assert_eq!(count_lattice(2.0000001), 9);
    }

    #[test]
    fn counts_match_brute_force() {
        for i in 1..=400 {
            let lambda = i as f64 * 0.37;
            assert_eq!(count_lattice(lambda), brute_force(lambda), "λ = {lambda}");
        }
    }

    #[test]
    fn representability() {
        assert!(representable(2));
        assert!(!representable(3));
        assert!(representable(25));
        assert!(representable(1));
        assert!(!representable(21));
        assert!(LatticeRadiusSquared::new(3).is_err());
        assert!(LatticeRadiusSquared::new(0).is_err());
    }

    #[test]
    fn records() {
        let r = clifford_records(1).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].index, 1);
        assert!((r[0].value - 4.0 * PI * PI).abs() < 1e-12);
        let r = clifford_records(2).unwrap();
        assert_eq!(r[1].index, 5);
        assert!((r[1].value - 8.0 * PI * PI).abs() < 1e-12);
        assert_eq!(clifford_records(3).unwrap().len(), 2);
        let five: Vec<u64> = clifford_records(5)
            .unwrap()
            .iter()
            .map(|r| match r.params {
                Params::Clifford { r2 } => r2,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(five, vec![1, 2, 4, 5]);
    }

    #[test]
    fn counting_jumps_only_at_representable_integers() {
        for n in 1..2000u64 {
            let below = count_lattice(n as f64);
            let above = count_lattice(n as f64 + 0.5);
            assert_eq!(above > below, representable(n), "n = {n}");
        }
    }
}
