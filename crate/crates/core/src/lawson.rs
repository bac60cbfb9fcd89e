//! Lawson tau-surfaces `τ_{m,k}`, the minimal tori and Klein bottles in
//! `S³` given by
//!
//! ```text
//! (x, y) ↦ (cos mx cos y, sin mx cos y, cos kx sin y, sin kx sin y)
//! ```
//!
//! for coprime `m >= k >= 1`. The induced metric is extremal for `Λ_j`
//! with `j = 2⌊√(m²+k²)/2⌋ + m + k - 1` and value `8πm E(√(m²-k²)/m)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bounds::bound_for;
use crate::elliptic::e_from_complement;
use crate::error::{invalid, Result};
use crate::record::{ExtremalRecord, Family, Params, Topology, ValueKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LawsonParameter {
    m: u64,
    k: u64,
}

impl LawsonParameter {
    pub fn new(m: u64, k: u64) -> Result<Self> {
        if k < 1 || m < k {
            return Err(invalid(format!(
                "Lawson parameters need m >= k >= 1, got m = {m}, k = {k}"
            )));
        }
        if crate::gcd(m, k) != 1 {
            return Err(invalid(format!(
                "Lawson parameters must be coprime, got m = {m}, k = {k}"
            )));
        }
        Ok(Self { m, k })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Torus when `m` and `k` are both odd, Klein bottle otherwise.
    pub fn topology(&self) -> Topology {
        if self.m % 2 == 1 && self.k % 2 == 1 {
            Topology::Torus
        } else {
            Topology::KleinBottle
        }
    }

    /// `k'² = k²/m²` for the modulus `√(m²-k²)/m`.
    pub fn modulus_complement(&self) -> f64 {
        (self.k * self.k) as f64 / (self.m * self.m) as f64
    }

    pub fn modulus(&self) -> f64 {
        ((self.m * self.m - self.k * self.k) as f64).sqrt() / self.m as f64
    }

    /// `E(√(m²-k²)/m)`.
    pub fn e_value(&self) -> f64 {
        e_from_complement(self.modulus_complement())
    }

    pub fn params(&self) -> Params {
        Params::Lawson {
            m: self.m,
            k: self.k,
        }
    }
}

/// `j = 2⌊√(m²+k²)/2⌋ + m + k - 1`, in exact integer arithmetic
/// (`⌊√S/2⌋ = ⌊isqrt(S)/2⌋`).
pub fn lawson_index(param: &LawsonParameter) -> u64 {
    let s = param.m * param.m + param.k * param.k;
    2 * (s.isqrt() / 2) + param.m + param.k - 1
}

/// The variant `2⌊√((m²+k²)/2)⌋ + m + k - 1`
/// (`⌊√(S/2)⌋ = isqrt(⌊S/2⌋)`). Kept as a diagnostic only.
pub fn lawson_index_alternative(param: &LawsonParameter) -> u64 {
    let s = param.m * param.m + param.k * param.k;
    2 * (s / 2).isqrt() + param.m + param.k - 1
}

/// `Λ_j(τ_{m,k}) = 8πm E(√(m²-k²)/m)`.
pub fn lawson_lambda(param: &LawsonParameter) -> Result<ExtremalRecord> {
    let value = 8.0 * PI * param.m as f64 * param.e_value();
    ExtremalRecord::new(
        Family::Lawson,
        param.params(),
        param.topology(),
        lawson_index(param),
        value,
        ValueKind::Exact,
        "8*pi*m*E(sqrt(m^2-k^2)/m)",
    )
}

/// A point of `τ_{m,k}` on the unit sphere of `R⁴`.
pub fn immersion_point(param: &LawsonParameter, x: f64, y: f64) -> [f64; 4] {
    let (sm, cm) = (param.m as f64 * x).sin_cos();
    let (sk, ck) = (param.k as f64 * x).sin_cos();
    let (sy, cy) = y.sin_cos();
    [cm * cy, sm * cy, ck * sy, sk * sy]
}

/// `1 + x - E(√(1 - x²))`, positive on `(0, 1]`.
pub fn index_slack(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(format!("x must lie in [0, 1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 + x - e_from_complement(x * x))
}

/// Coprime pairs `m >= k >= 1` with `m <= max_m`, ordered by `(m, k)`.
pub fn enumerate_parameters(max_m: u64) -> Vec<LawsonParameter> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for k in 1..=m {
            if let Ok(p) = LawsonParameter::new(m, k) {
                out.push(p);
            }
        }
    }
    out
}

/// Both readings of the index formula for one surface, with the
/// non-maximality margin under each.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexReading {
    pub m: u64,
    pub k: u64,
    pub printed: u64,
    pub alternative: u64,
    pub value: f64,
    pub printed_margin: f64,
    pub alternative_margin: f64,
    /// `j - m E(·)` for the printed index.
    pub printed_slack: f64,
    pub alternative_slack: f64,
}

impl IndexReading {
    pub fn disagrees(&self) -> bool {
        self.printed != self.alternative
    }
}

pub fn index_reading(param: &LawsonParameter) -> Result<IndexReading> {
    let printed = lawson_index(param);
    let alternative = lawson_index_alternative(param);
    let m_e = param.m as f64 * param.e_value();
    let value = 8.0 * PI * m_e;
    Ok(IndexReading {
        m: param.m,
        k: param.k,
        printed,
        alternative,
        value,
        printed_margin: bound_for(param.topology(), printed)?.value - value,
        alternative_margin: bound_for(param.topology(), alternative)?.value - value,
        printed_slack: printed as f64 - m_e,
        alternative_slack: alternative as f64 - m_e,
    })
}

pub fn index_readings(max_m: u64) -> Result<Vec<IndexReading>> {
    enumerate_parameters(max_m)
        .iter()
        .map(index_reading)
        .collect()
}
