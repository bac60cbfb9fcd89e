//! Otsuki tori `O_{p/q}`.
//!
//! An Otsuki torus is an `SO(2)`-invariant minimal torus in `S³` whose
//! orbit curve is a closed geodesic of the reduced metric
//! `4π² sin²φ (dφ² + cos²φ dθ²)`. The geodesic oscillates between the
//! latitudes `φ = a` and `φ = π/2 - a`; `Ω(a)` is the advance in `θ`
//! between consecutive extremal latitudes, and the curve closes exactly
//! when `Ω(a) = pπ/q`.
//!
//! The torus is extremal for `Λ_{2p-1}` with value `8πq Φ(a)`, where
//! `Φ(a) = cos a · E(√(1 - tan²a))`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::elliptic::{e_from_complement, kernel_gap_from_complement, pi_from_complement};
use crate::error::{invalid, Error, Result};
use crate::quad::tanh_sinh;
use crate::record::{ExtremalRecord, Family, Params, Topology, ValueKind};

/// Reduced rational `p/q` with `1/2 < p/q < √2/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OtsukiParameter {
    // field order gives the lexicographic (q, p) ordering
    q: u64,
    p: u64,
}

impl OtsukiParameter {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(invalid(format!(
                "p and q must be positive, got p = {p}, q = {q}"
            )));
        }
        if crate::gcd(p, q) != 1 {
            return Err(invalid(format!("p/q = {p}/{q} is not reduced")));
        }
        if 2 * p <= q {
            return Err(invalid(format!("p/q = {p}/{q} must exceed 1/2 strictly")));
        }
        // p/q < √2/2  ⇔  2p² < q²
        if 2 * p * p >= q * q {
            return Err(invalid(format!(
                "p/q = {p}/{q} must be below √2/2 strictly"
            )));
        }
        Ok(Self { q, p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Closure target `pπ/q` for `Ω`.
    pub fn target_omega(&self) -> f64 {
        self.p as f64 * PI / self.q as f64
    }

    pub fn params(&self) -> Params {
        Params::Otsuki {
            p: self.p,
            q: self.q,
        }
    }
}

/// Minimal latitude `a ∈ (0, π/4]` of a reduced geodesic.
///
/// `β = √(1 - tan²a)` is derived on demand and never stored.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OtsukiAngle(f64);

impl OtsukiAngle {
    pub fn new(a: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 || a > FRAC_PI_4 {
            return Err(invalid(format!(
                "Otsuki angle must lie in (0, π/4], got {a}"
            )));
        }
        Ok(Self(a))
    }

    fn interior(a: f64) -> Result<Self> {
        let angle = Self::new(a)?;
        if a == FRAC_PI_4 {
            return Err(invalid(
                "a = π/4 is an endpoint; the formula needs 0 < a < π/4",
            ));
        }
        Ok(angle)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - β² = tan²a`, the complementary parameter of the modulus `β`.
    pub fn tan_squared(self) -> f64 {
        self.0.tan().powi(2).min(1.0)
    }

    /// `β² = 1 - tan²a = cos 2a / cos²a`.
    pub fn beta_squared(self) -> f64 {
        (2.0 * self.0).cos() / self.0.cos().powi(2)
    }

    pub fn beta(self) -> f64 {
        self.beta_squared().max(0.0).sqrt()
    }
}

/// `Ω(a) = Π(-cos 2a / sin²a, √(1 - tan²a)) / sin a` for `0 < a <= π/4`.
///
/// At `a = π/4` this gives `π/√2`.
pub fn omega_closed(a: f64) -> Result<f64> {
    let a = OtsukiAngle::new(a)?.value();
    if a == FRAC_PI_4 {
        return Ok(PI / SQRT_2);
    }
    let s = a.sin();
    let n = -(2.0 * a).cos() / (s * s);
    let kc2 = OtsukiAngle(a).tan_squared();
    Ok(pi_from_complement(n, kc2) / s)
}

/// `Ω(a)` by tanh-sinh quadrature of its defining integral
///
/// ```text
/// Ω(a) = sin a cos a ∫ₐ^{π/2-a} dφ / (cos φ √(sin²φ cos²φ - sin²a cos²a))
/// ```
///
/// The radicand is factored as `sin(φ-a) sin(π/2-a-φ) (sin 2φ + sin 2a) / 2`
/// and evaluated from the node's distances to both endpoints, so the
/// inverse-square-root singularities cost no accuracy. This path shares
/// nothing with the elliptic kernel and serves as its oracle.
pub fn omega_quadrature(a: f64) -> Result<f64> {
    let a = OtsukiAngle::new(a)?.value();
    if a == FRAC_PI_4 {
        return Ok(PI / SQRT_2);
    }
    let b = FRAC_PI_2 - a;
    let sc = a.sin() * a.cos();
    let sin2a = (2.0 * a).sin();
    let integral = tanh_sinh(
        |phi, to_a, to_b| {
            let radicand = to_a.sin() * to_b.sin() * 0.5 * ((2.0 * phi).sin() + sin2a);
            1.0 / (phi.cos() * radicand.sqrt())
        },
        a,
        b,
        1e-14,
    );
    Ok(sc * integral)
}

/// `Ω'(a) = ((2-β²)^{3/2} / β²) (K(β) - 2E(β)/(2-β²))`, simplified to
/// `(K - 2E/(2-β²)) / (cos a cos 2a)`.
pub fn omega_prime(a: f64) -> Result<f64> {
    let angle = OtsukiAngle::interior(a)?;
    let gap = kernel_gap_from_complement(angle.tan_squared());
    Ok(gap / (a.cos() * (2.0 * a).cos()))
}

/// `Φ(a) = cos a · E(√(1 - tan²a))` for `0 < a <= π/4`.
pub fn phi(a: f64) -> Result<f64> {
    let angle = OtsukiAngle::new(a)?;
    Ok(a.cos() * e_from_complement(angle.tan_squared()))
}

/// `Φ'(a) = (√((1-β²)(2-β²)) / β²) (K(β) - 2E(β)/(2-β²))`, simplified to
/// `sin a · (K - 2E/(2-β²)) / cos 2a`.
pub fn phi_prime(a: f64) -> Result<f64> {
    let angle = OtsukiAngle::interior(a)?;
    let gap = kernel_gap_from_complement(angle.tan_squared());
    Ok(a.sin() * gap / (2.0 * a).cos())
}

/// Width of the final bisection bracket.
pub const ANGLE_TOLERANCE: f64 = 1e-13;

/// Largest accepted `|Ω(a*) - pπ/q|` after bisection.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Solves `Ω(a) = pπ/q` by bisection on the increasing function `Ω`.
pub fn solve_parameter(param: &OtsukiParameter) -> Result<OtsukiAngle> {
    let target = param.target_omega();
    if !(target > FRAC_PI_2 && target < PI / SQRT_2) {
        return Err(invalid(format!("pπ/q = {target} lies outside (π/2, π/√2)")));
    }
    let omega = |a: f64| omega_closed(a).expect("bracket stays inside (0, π/4]");

    let mut lo = 1e-3;
    while omega(lo) >= target {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::Domain(format!(
                "no lower bracket for Ω(a) = {target}"
            )));
        }
    }
    let mut hi = FRAC_PI_4;
    while hi - lo > ANGLE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if omega(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let residual = (omega(a) - target).abs();
    if residual >= RESIDUAL_TOLERANCE {
        return Err(Error::Domain(format!(
            "bisection for p/q = {}/{} stalled with residual {residual:e}",
            param.p, param.q
        )));
    }
    OtsukiAngle::interior(a)
}

/// `Λ_{2p-1}(O_{p/q}) = 8πq Φ(a*)` where `Ω(a*) = pπ/q`.
pub fn otsuki_lambda(param: &OtsukiParameter) -> Result<ExtremalRecord> {
    let a = solve_parameter(param)?;
    let value = 8.0 * PI * param.q as f64 * phi(a.value())?;
    ExtremalRecord::new(
        Family::Otsuki,
        param.params(),
        Topology::Torus,
        2 * param.p - 1,
        value,
        ValueKind::Exact,
        "8*pi*q*Phi(a), Omega(a) = p*pi/q",
    )
}

/// All valid parameters with `q <= max_q`, ordered by `q`, then `p`.
pub fn enumerate_parameters(max_q: u64) -> Vec<OtsukiParameter> {
    let mut out = Vec::new();
    for q in 3..=max_q {
        for p in (q / 2 + 1)..q {
            if let Ok(param) = OtsukiParameter::new(p, q) {
                out.push(param);
            }
        }
    }
    out
}
