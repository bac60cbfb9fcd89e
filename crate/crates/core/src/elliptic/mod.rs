//! Complete elliptic integrals of the first, second and third kind.
//!
//! **Convention: every function takes the modulus `k`, not the parameter
//! `m = k²`.** Tables and libraries that use the parameter (scipy's
//! `ellipk(m)`, Abramowitz & Stegun chapter 17) must be called with `k²`.
//!
//! ```text
//! K(k)    = ∫₀¹ dx / (√(1-x²) √(1-k²x²))
//! E(k)    = ∫₀¹ √(1-k²x²) / √(1-x²) dx
//! Π(n, k) = ∫₀¹ dx / ((1-nx²) √(1-x²) √(1-k²x²))
//! ```
//!
//! All three are evaluated through Carlson's symmetric forms. The
//! `*_from_complement` variants take `k'² = 1 - k²` directly, which keeps
//! full relative accuracy when `k` is close to 1 and `k'²` is known in
//! closed form (e.g. `tan²a` for the Otsuki moduli).

pub mod carlson;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::error::{domain, invalid, Result};
use carlson::{rd, rf, rj};

/// Distance from 1 below which `k` counts as the divergent endpoint of
/// `K` and `Π`.
pub const ENDPOINT_GUARD: f64 = 1e-15;

/// Elliptic modulus `k` (not the parameter `k²`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    /// Accepts any finite `k` in `[0, 1]`; the individual integrals apply
    /// their own upper limit.
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(invalid(format!(
                "elliptic modulus must be finite and >= 0, got {k}"
            )));
        }
        if k > 1.0 {
            return Err(invalid(format!("elliptic modulus must be <= 1, got {k}")));
        }
        Ok(Self(k))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `k'² = 1 - k²`, formed as `(1-k)(1+k)`.
    pub fn complement_squared(self) -> f64 {
        (1.0 - self.0) * (1.0 + self.0)
    }

    fn check_below_one(self, what: &str) -> Result<()> {
        if 1.0 - self.0 <= ENDPOINT_GUARD {
            Err(domain(format!(
                "{what} diverges at k = 1 (got k = {})",
                self.0
            )))
        } else {
            Ok(())
        }
    }
}

/// Characteristic `n` of the third-kind integral; must stay below 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PiCharacteristic(f64);

impl PiCharacteristic {
    pub fn new(n: f64) -> Result<Self> {
        if !n.is_finite() {
            return Err(invalid(format!("characteristic must be finite, got {n}")));
        }
        if n >= 1.0 {
            return Err(domain(format!(
                "Π(n, k) has a non-integrable pole inside [0, 1] for n >= 1 (got n = {n})"
            )));
        }
        Ok(Self(n))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `K(k)` for `0 <= k < 1`.
pub fn complete_k(k: f64) -> Result<f64> {
    let k = EllipticModulus::new(k).map_err(upper_is_domain("K"))?;
    k.check_below_one("K")?;
    if k.0 == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(k_from_complement(k.complement_squared()))
}

/// `E(k)` for `0 <= k <= 1`.
pub fn complete_e(k: f64) -> Result<f64> {
    let k = EllipticModulus::new(k)?;
    if k.0 == 0.0 {
        return Ok(FRAC_PI_2);
    }
    if k.0 == 1.0 {
        return Ok(1.0);
    }
    Ok(e_from_complement(k.complement_squared()))
}

/// `Π(n, k)` for `n < 1`, `0 <= k < 1`. Negative `n` is allowed.
pub fn complete_pi(n: f64, k: f64) -> Result<f64> {
    let n = PiCharacteristic::new(n)?;
    let k = EllipticModulus::new(k).map_err(upper_is_domain("Π"))?;
    k.check_below_one("Π")?;
    if n.0 == 0.0 && k.0 == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(pi_from_complement(n.0, k.complement_squared()))
}

/// A modulus above 1 is outside the convergence region of `K` and `Π`,
/// which is reported as a domain error rather than a type error.
fn upper_is_domain(what: &'static str) -> impl Fn(crate::Error) -> crate::Error {
    move |e| match e {
        crate::Error::InvalidInput(msg) if msg.contains("<= 1") => {
            domain(format!("{what} is undefined for k > 1 ({msg})"))
        }
        other => other,
    }
}

/// `K` as a function of `k'² = 1 - k²`, for `0 < kc2 <= 1`.
pub fn k_from_complement(kc2: f64) -> f64 {
    rf(0.0, kc2, 1.0)
}

/// `E` as a function of `k'² = 1 - k²`, for `0 < kc2 <= 1`.
///
/// Uses `E = (k'²/3)(R_D(0, k'², 1) + R_D(0, 1, k'²))`; both terms are
/// positive, so there is no cancellation as `k → 1`.
pub fn e_from_complement(kc2: f64) -> f64 {
    kc2 / 3.0 * (rd(0.0, kc2, 1.0) + rd(0.0, 1.0, kc2))
}

/// `Π(n, k)` as a function of `n < 1` and `k'² = 1 - k²`, `0 < kc2 <= 1`.
///
/// For `n < 0` the integral is first mapped to the characteristic
/// `N = (k² - n)/(1 - n)` in `(k², 1)`, where every term is positive.
pub fn pi_from_complement(n: f64, kc2: f64) -> f64 {
    let k2 = 1.0 - kc2;
    if n == 0.0 {
        return rf(0.0, kc2, 1.0);
    }
    if n > 0.0 {
        return rf(0.0, kc2, 1.0) + n / 3.0 * rj(0.0, kc2, 1.0, 1.0 - n);
    }
    let one_minus_n = 1.0 - n;
    let big_n = (k2 - n) / one_minus_n;
    let p = kc2 / one_minus_n;
    let rf0 = rf(0.0, kc2, 1.0);
    let pi_big_n = rf0 + big_n / 3.0 * rj(0.0, kc2, 1.0, p);
    let weight = -n * kc2 / (one_minus_n * (k2 - n));
    weight * pi_big_n + k2 / (k2 - n) * rf0
}

/// `K(k) - 2E(k)/(2 - k²)` as a function of `k'²`.
///
/// This combination governs the sign of `Φ'` and `Ω'` for the Otsuki
/// tori. It vanishes like `πk⁴/32` at `k = 0`, so for `k² <= 1/2` it is
/// summed from its hypergeometric series
/// `(2-k²)K - 2E = (π/2) Σ_{n>=2} c_{n-1} (n-1)/n k^{2n}`,
/// `c_n = ((1/2)_n / n!)²`, whose terms are all positive.
pub fn kernel_gap_from_complement(kc2: f64) -> f64 {
    let k2 = 1.0 - kc2;
    if k2 <= 0.5 {
        let mut c = 0.25; // c_1
        let mut power = k2 * k2; // k^{2n} at n = 2
        let mut sum = 0.0;
        for n in 2..400 {
            let nf = n as f64;
            let term = c * (nf - 1.0) / nf * power;
            sum += term;
            if term <= 1e-18 * sum {
                break;
            }
            // c_n = c_{n-1} ((2n-1)/(2n))²
            let ratio = (2.0 * nf - 1.0) / (2.0 * nf);
            c *= ratio * ratio;
            power *= k2;
        }
        FRAC_PI_2 * sum / (1.0 + kc2)
    } else {
        k_from_complement(kc2) - 2.0 * e_from_complement(kc2) / (1.0 + kc2)
    }
}

/// Below this modulus the derivative formulas switch to their Maclaurin
/// expansions, avoiding the `(E - K)/k` cancellation.
const SMALL_K: f64 = 1e-3;

/// `dE/dk = (E - K)/k`, with the limit 0 at `k = 0`.
pub fn de_dk(k: f64) -> Result<f64> {
    let m = EllipticModulus::new(k).map_err(upper_is_domain("dE/dk"))?;
    m.check_below_one("dE/dk")?;
    if k < SMALL_K {
        let k2 = k * k;
        return Ok(-FRAC_PI_2 * k * (0.5 + 3.0 / 16.0 * k2 + 15.0 / 128.0 * k2 * k2));
    }
    let kc2 = m.complement_squared();
    Ok((e_from_complement(kc2) - k_from_complement(kc2)) / k)
}

/// `dK/dk = E/(k(1-k²)) - K/k`, with the limit 0 at `k = 0`.
pub fn dk_dk(k: f64) -> Result<f64> {
    let m = EllipticModulus::new(k).map_err(upper_is_domain("dK/dk"))?;
    m.check_below_one("dK/dk")?;
    if k < SMALL_K {
        let k2 = k * k;
        return Ok(FRAC_PI_2 * k * (0.5 + 9.0 / 16.0 * k2 + 225.0 / 384.0 * k2 * k2));
    }
    let kc2 = m.complement_squared();
    Ok(e_from_complement(kc2) / (k * kc2) - k_from_complement(kc2) / k)
}

fn check_pi_derivative_args(n: f64, k: f64, formula: &str) -> Result<EllipticModulus> {
    let n = PiCharacteristic::new(n)?.value();
    let m = EllipticModulus::new(k).map_err(upper_is_domain("Π"))?;
    m.check_below_one(formula)?;
    let k2 = k * k;
    if (n - k2).abs() <= 4.0 * f64::EPSILON * n.abs().max(k2).max(f64::MIN_POSITIVE) {
        return Err(domain(format!(
            "{formula}: denominator (n - k²) vanishes at n = {n}, k = {k}"
        )));
    }
    Ok(m)
}

/// `∂Π(n,k)/∂n = (E + (k²-n)K/n + (n²-k²)Π/n) / (2(k²-n)(n-1))`.
///
/// At `n = 0` the removable singularity is replaced by its limit
/// `(K - E)/k²`.
pub fn dpi_dn(n: f64, k: f64) -> Result<f64> {
    let m = check_pi_derivative_args(n, k, "dΠ/dn")?;
    let kc2 = m.complement_squared();
    let k2 = k * k;
    let big_k = k_from_complement(kc2);
    let big_e = e_from_complement(kc2);
    if n == 0.0 {
        return Ok(if k2 == 0.0 {
            FRAC_PI_4
        } else {
            (big_k - big_e) / k2
        });
    }
    let big_pi = pi_from_complement(n, kc2);
    let bracket = big_e + (k2 - n) / n * big_k + (n * n - k2) / n * big_pi;
    Ok(bracket / (2.0 * (k2 - n) * (n - 1.0)))
}

/// `∂Π(n,k)/∂k = k/(n-k²) · (E/(k²-1) + Π)`.
pub fn dpi_dk(n: f64, k: f64) -> Result<f64> {
    let m = check_pi_derivative_args(n, k, "dΠ/dk")?;
    let kc2 = m.complement_squared();
    let big_e = e_from_complement(kc2);
    let big_pi = pi_from_complement(n, kc2);
    Ok(k / (n - k * k) * (big_pi - big_e / kc2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::tanh_sinh;
    use crate::Error;
    use std::f64::consts::PI;

    /// AGM oracle: K(k) = π / (2 agm(1, k')).
    fn k_agm(k: f64) -> f64 {
        let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
        for _ in 0..40 {
            let next = 0.5 * (a + b);
            b = (a * b).sqrt();
            a = next;
        }
        PI / (2.0 * a)
    }

    fn e_quadrature(k: f64) -> f64 {
        // substitute x = sin t: ∫₀^{π/2} √(1 - k² sin² t) dt
        tanh_sinh(
            |t, _, _| (1.0 - k * k * t.sin().powi(2)).sqrt(),
            0.0,
            FRAC_PI_2,
            1e-15,
        )
    }

    fn pi_quadrature(n: f64, k: f64) -> f64 {
        tanh_sinh(
            |x, _, r| {
                let one_minus_x2 = r * (1.0 + x);
                1.0 / ((1.0 - n * x * x) * one_minus_x2.sqrt() * (1.0 - k * k * x * x).sqrt())
            },
            0.0,
            1.0,
            1e-15,
        )
    }

    #[test]
    fn special_values() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        assert_eq!(complete_e(0.0).unwrap(), FRAC_PI_2);
        assert_eq!(complete_e(1.0).unwrap(), 1.0);
        assert_eq!(complete_pi(0.0, 0.0).unwrap(), FRAC_PI_2);
    }

    #[test]
    fn generic_paths_agree_with_special_values() {
        assert!((k_from_complement(1.0) - FRAC_PI_2).abs() < 1e-15);
        assert!((e_from_complement(1.0) - FRAC_PI_2).abs() < 1e-15);
        assert!((e_from_complement(1e-30) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn k_matches_agm() {
        let k = 0.5f64.sqrt();
        let v = complete_k(k).unwrap();
        assert!((v - k_agm(k)).abs() <= 1e-14 * v);
        for i in 1..100 {
            let k = i as f64 / 100.0;
            let v = complete_k(k).unwrap();
            assert!((v - k_agm(k)).abs() <= 1e-14 * v, "k = {k}");
        }
    }

    #[test]
    fn e_matches_quadrature() {
        let k = 2.0 * 2f64.sqrt() / 3.0;
        let v = complete_e(k).unwrap();
        assert!((v - e_quadrature(k)).abs() <= 1e-14 * v);
        assert!((v - 1.1138).abs() < 1e-4, "{v}");
    }

    #[test]
    fn pi_reduces_to_k() {
        for &k in &[0.0, 0.1, 0.5, 0.9, 0.999] {
            let a = complete_pi(0.0, k).unwrap();
            let b = complete_k(k).unwrap();
            assert!((a - b).abs() <= 1e-13 * b);
        }
    }

    #[test]
    fn pi_negative_characteristic_matches_quadrature() {
        let v = complete_pi(-1.0, 0.5).unwrap();
        let q = pi_quadrature(-1.0, 0.5);
        assert!((v - q).abs() <= 1e-13 * q, "{v} vs {q}");
        // circular case with k = 0 has a closed form π / (2√(1-n))
        for &n in &[-1e8, -50.0, -0.3, 0.4, 0.95] {
            let v = complete_pi(n, 0.0).unwrap();
            let exact = PI / (2.0 * (1.0 - n).sqrt());
            assert!((v - exact).abs() <= 1e-14 * exact, "n = {n}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(complete_k(1.0), Err(Error::Domain(_))));
        assert!(matches!(complete_k(1.0 - 5e-16), Err(Error::Domain(_))));
        assert!(matches!(complete_k(1.5), Err(Error::Domain(_))));
        assert!(matches!(complete_k(-0.1), Err(Error::InvalidInput(_))));
        assert!(matches!(complete_k(f64::NAN), Err(Error::InvalidInput(_))));
        assert!(matches!(
            complete_e(1.0 + 1e-12),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            complete_e(f64::INFINITY),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(complete_pi(1.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(complete_pi(0.5, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn derivative_limits_at_zero() {
        assert_eq!(de_dk(0.0).unwrap(), 0.0);
        assert_eq!(dk_dk(0.0).unwrap(), 0.0);
        let near_one = dk_dk(1.0 - 1e-12).unwrap();
        assert!(near_one.is_finite() && near_one > 0.0);
        assert!(matches!(dk_dk(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn small_k_series_join_the_closed_forms() {
        let k = SMALL_K;
        let kc2 = (1.0 - k) * (1.0 + k);
        let closed_e = (e_from_complement(kc2) - k_from_complement(kc2)) / k;
        let closed_k = e_from_complement(kc2) / (k * kc2) - k_from_complement(kc2) / k;
        assert!((de_dk(k * (1.0 - 1e-12)).unwrap() - closed_e).abs() < 1e-10);
        assert!((dk_dk(k * (1.0 - 1e-12)).unwrap() - closed_k).abs() < 1e-10);
    }

    #[test]
    fn derivatives_match_finite_differences_at_0_6() {
        let h = 1e-6;
        let k = 0.6;
        let fd_e = (complete_e(k + h).unwrap() - complete_e(k - h).unwrap()) / (2.0 * h);
        let fd_k = (complete_k(k + h).unwrap() - complete_k(k - h).unwrap()) / (2.0 * h);
        assert!((de_dk(k).unwrap() - fd_e).abs() < 1e-8);
        assert!((dk_dk(k).unwrap() - fd_k).abs() < 1e-8);
    }

    #[test]
    fn pi_partials_match_finite_differences() {
        let h = 1e-6;
        let (n, k) = (-1.0, 0.5);
        let fd = (complete_pi(n + h, k).unwrap() - complete_pi(n - h, k).unwrap()) / (2.0 * h);
        assert!((dpi_dn(n, k).unwrap() - fd).abs() < 1e-7);
        let (n, k) = (-0.5, 0.3);
        let fd = (complete_pi(n, k + h).unwrap() - complete_pi(n, k - h).unwrap()) / (2.0 * h);
        assert!((dpi_dk(n, k).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn pi_partials_reject_degenerate_denominator() {
        match dpi_dn(0.09, 0.3) {
            Err(Error::Domain(msg)) => assert!(msg.contains("dΠ/dn")),
            other => panic!("{other:?}"),
        }
        match dpi_dk(0.09, 0.3) {
            Err(Error::Domain(msg)) => assert!(msg.contains("dΠ/dk")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dpi_dn_at_zero_uses_limit() {
        let h = 1e-6;
        let k = 0.4;
        let fd = (complete_pi(h, k).unwrap() - complete_pi(-h, k).unwrap()) / (2.0 * h);
        assert!((dpi_dn(0.0, k).unwrap() - fd).abs() < 1e-8);
    }

    #[test]
    fn kernel_gap_series_and_direct_forms_agree_at_the_switch() {
        let kc2 = 0.5;
        let direct = k_from_complement(kc2) - 2.0 * e_from_complement(kc2) / (1.0 + kc2);
        let series = kernel_gap_from_complement(kc2 + 1e-16);
        assert!((direct - series).abs() < 1e-14, "{direct} {series}");
        // leading behaviour π k⁴ / 32
        let k = 1e-3;
        let g = kernel_gap_from_complement(1.0 - k * k);
        assert!((g / (PI * k.powi(4) / 32.0) - 1.0).abs() < 1e-5);
    }
}
