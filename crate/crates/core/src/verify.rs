//! The verification harness: enumerate every family within given limits,
//! compare each record with the lower bound for its topology and index,
//! and check the auxiliary inequalities on grids.
//!
//! The verdict is `pass` iff every record has strictly positive margin
//! (except the whitelisted equality `τ̃₃,₁`, which must sit on the bound
//! within [`EQUALITY_TOLERANCE`]) and every sweep passes.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use serde::Serialize;

use crate::bipolar::{bipolar_lawson_record, bipolar_otsuki_record};
use crate::bounds::pi_over_sqrt3;
use crate::clifford::{clifford_records, count_lattice, disk_area_estimate, representable};
use crate::elliptic::{complete_e, complete_k};
use crate::error::{invalid, Result};
use crate::lawson::{self, index_slack, lawson_lambda};
use crate::otsuki::{
    self, omega_closed, omega_prime, omega_quadrature, phi, phi_prime, solve_parameter,
};
use crate::record::{Family, EQUALITY_TOLERANCE};

pub use crate::record::ExtremalRecord;

/// Sweeps fail when a non-strict inequality is violated by more than this.
pub const RESIDUAL_FLOOR: f64 = -1e-12;

/// Default threshold below which a positive margin produces a warning.
pub const DEFAULT_WARN_BELOW: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_q: u64,
    pub max_m: u64,
    pub max_r2: u64,
}

impl Limits {
    pub fn new(max_q: u64, max_m: u64, max_r2: u64) -> Result<Self> {
        if max_q == 0 || max_m == 0 || max_r2 == 0 {
            return Err(invalid("limits must be positive"));
        }
        Ok(Self {
            max_q,
            max_m,
            max_r2,
        })
    }
}

/// All records of `family` within `limits`, in parameter order. Lawson
/// pairs with no bipolar record (index below 1) are skipped.
pub fn verify_family(family: Family, limits: &Limits) -> Result<Vec<ExtremalRecord>> {
    match family {
        Family::Otsuki => otsuki::enumerate_parameters(limits.max_q)
            .iter()
            .map(otsuki::otsuki_lambda)
            .collect(),
        Family::BipolarOtsuki => otsuki::enumerate_parameters(limits.max_q)
            .iter()
            .map(bipolar_otsuki_record)
            .collect(),
        Family::Lawson => lawson::enumerate_parameters(limits.max_m)
            .iter()
            .map(lawson_lambda)
            .collect(),
        Family::BipolarLawson => Ok(lawson::enumerate_parameters(limits.max_m)
            .iter()
            .filter_map(|p| bipolar_lawson_record(p).ok())
            .collect()),
        Family::Clifford => clifford_records(limits.max_r2),
    }
}

/// Records of every family, concatenated in [`Family::ALL`] order.
pub fn verify_all(limits: &Limits) -> Result<Vec<ExtremalRecord>> {
    let mut out = Vec::new();
    for family in Family::ALL {
        out.extend(verify_family(family, limits)?);
    }
    Ok(out)
}

/// Outcome of checking one inequality over a grid or an enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub name: String,
    pub domain: String,
    pub samples: usize,
    /// Smallest `lhs - rhs` seen (for "increasing" checks, the smallest step).
    pub worst_margin: f64,
    pub worst_location: String,
    pub strict: bool,
    pub passed: bool,
}

struct Sweep {
    name: &'static str,
    domain: String,
    strict: bool,
    samples: usize,
    worst: f64,
    location: String,
}

impl Sweep {
    fn new(name: &'static str, domain: impl Into<String>, strict: bool) -> Self {
        Self {
            name,
            domain: domain.into(),
            strict,
            samples: 0,
            worst: f64::INFINITY,
            location: String::new(),
        }
    }

    fn record(&mut self, margin: f64, location: impl FnOnce() -> String) {
        self.samples += 1;
        // NaN is always recorded as the worst case.
        if margin.is_nan() || margin < self.worst {
            self.worst = margin;
            self.location = location();
        }
    }

    fn finish(self) -> SweepResult {
        let passed = if self.samples == 0 {
            true
        } else if self.strict {
            self.worst > 0.0
        } else {
            self.worst >= RESIDUAL_FLOOR
        };
        SweepResult {
            name: self.name.to_string(),
            domain: self.domain,
            samples: self.samples,
            worst_margin: if self.samples == 0 { 0.0 } else { self.worst },
            worst_location: self.location,
            strict: self.strict,
            passed,
        }
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn loc(var: &str, x: f64) -> String {
    format!("{var}={x:.17e}")
}

/// Checks the analytic inequalities behind the Otsuki and Lawson estimates
/// on grids of `grid_size` points.
pub fn sweep_properties(grid_size: usize) -> Result<Vec<SweepResult>> {
    if grid_size < 100 {
        return Err(invalid(format!(
            "grid_size must be at least 100, got {grid_size}"
        )));
    }
    let n = grid_size;
    let mut out = Vec::new();

    let mut s = Sweep::new("K(k) - 2E(k)/(2-k^2) >= 0", "k in [0, 0.999]", false);
    for k in grid(0.0, 0.999, n) {
        let m = complete_k(k)? - 2.0 * complete_e(k)? / (2.0 - k * k);
        s.record(m, || loc("k", k));
    }
    out.push(s.finish());

    // Open interval (0, π/4): a_i = (π/4) i / (n+1).
    let open: Vec<f64> = (1..=n)
        .map(|i| FRAC_PI_4 * i as f64 / (n + 1) as f64)
        .collect();
    let omegas: Vec<f64> = open
        .iter()
        .map(|&a| omega_closed(a))
        .collect::<Result<_>>()?;
    let phis: Vec<f64> = open.iter().map(|&a| phi(a)).collect::<Result<_>>()?;

    let mut s = Sweep::new("Omega strictly increasing", "a in (0, pi/4)", true);
    for i in 1..n {
        s.record(omegas[i] - omegas[i - 1], || loc("a", open[i]));
    }
    out.push(s.finish());

    let mut s = Sweep::new("Omega'(a) >= 0", "a in (0, pi/4)", false);
    for &a in &open {
        s.record(omega_prime(a)?, || loc("a", a));
    }
    out.push(s.finish());

    let mut s = Sweep::new("Phi non-decreasing", "a in (0, pi/4)", false);
    for i in 1..n {
        s.record(phis[i] - phis[i - 1], || loc("a", open[i]));
    }
    out.push(s.finish());

    let mut s = Sweep::new("Phi'(a) >= 0", "a in (0, pi/4)", false);
    let mut half = Sweep::new("Phi'(a) < 1/2", "a in (0, pi/4)", true);
    for &a in &open {
        let d = phi_prime(a)?;
        s.record(d, || loc("a", a));
        half.record(0.5 - d, || loc("a", a));
    }
    out.push(s.finish());
    out.push(half.finish());

    let mut s = Sweep::new(
        "(2/pi)Omega - Phi strictly increasing",
        "a in (0, pi/4)",
        true,
    );
    let g: Vec<f64> = omegas
        .iter()
        .zip(&phis)
        .map(|(o, p)| 2.0 / PI * o - p)
        .collect();
    for i in 1..n {
        s.record(g[i] - g[i - 1], || loc("a", open[i]));
    }
    out.push(s.finish());

    let target = (2.0 * 3f64.sqrt() - PI) / (3.0 * 3f64.sqrt());
    let mut s = Sweep::new(
        "(2/pi)Omega(a) - Phi(a) > (2sqrt(3)-pi)/(3sqrt(3))",
        "a in [0.2, pi/4)",
        true,
    );
    for i in 0..n {
        let a = 0.2 + (FRAC_PI_4 - 0.2) * i as f64 / n as f64;
        s.record(2.0 / PI * omega_closed(a)? - phi(a)? - target, || {
            loc("a", a)
        });
    }
    out.push(s.finish());

    let slope = FRAC_PI_4 / (pi_over_sqrt3() - 1.0);
    let mut s = Sweep::new(
        "Omega'(xi) > (pi/4)/(pi/sqrt(3)-1)",
        "xi in [1e-4, 0.2]",
        true,
    );
    for xi in grid(1e-4, 0.2, n) {
        s.record(omega_prime(xi)? - slope, || loc("xi", xi));
    }
    out.push(s.finish());

    let mut s = Sweep::new(
        "|Omega closed form - quadrature| < 1e-9",
        "a in [0.05, pi/4-0.05]",
        true,
    );
    for a in grid(0.05, FRAC_PI_4 - 0.05, n) {
        let d = (omega_closed(a)? - omega_quadrature(a)?).abs();
        s.record(1e-9 - d, || loc("a", a));
    }
    out.push(s.finish());

    let mut s = Sweep::new("1 + x - E(sqrt(1-x^2)) > 0", "x in (0, 1]", true);
    for i in 1..=n {
        let x = i as f64 / n as f64;
        s.record(index_slack(x)?, || loc("x", x));
    }
    out.push(s.finish());

    Ok(out)
}

/// Inequalities indexed by the enumerated parameters rather than a grid.
pub fn parameter_sweeps(limits: &Limits) -> Result<Vec<SweepResult>> {
    let mut out = Vec::new();
    let otsuki_params = otsuki::enumerate_parameters(limits.max_q);

    let mut main = Sweep::new(
        "(2/pi)Omega(a) - Phi(a) > (2sqrt(3)-pi)/(q sqrt(3)) at Omega(a) = p*pi/q",
        format!("Otsuki p/q, q <= {}", limits.max_q),
        true,
    );
    let mut lower = Sweep::new(
        "8*pi*q <= Otsuki value",
        format!("Otsuki p/q, q <= {}", limits.max_q),
        false,
    );
    let mut upper = Sweep::new(
        "Otsuki value <= 4*sqrt(2)*pi^2*q",
        format!("Otsuki p/q, q <= {}", limits.max_q),
        false,
    );
    for param in &otsuki_params {
        let a = solve_parameter(param)?.value();
        let q = param.q() as f64;
        let rhs = (2.0 * 3f64.sqrt() - PI) / (q * 3f64.sqrt());
        let here = || format!("p={};q={}", param.p(), param.q());
        main.record(2.0 / PI * omega_closed(a)? - phi(a)? - rhs, here);
        let value = 8.0 * PI * q * phi(a)?;
        lower.record(value - 8.0 * PI * q, here);
        upper.record(4.0 * SQRT_2 * PI * PI * q - value, here);
    }
    out.extend([main.finish(), lower.finish(), upper.finish()]);

    let mut bip = Sweep::new(
        "Bipolar Otsuki bound < lower bound for its index",
        format!("Otsuki p/q, q <= {}", limits.max_q),
        true,
    );
    for param in &otsuki_params {
        let r = bipolar_otsuki_record(param)?;
        bip.record(r.margin, || format!("p={};q={}", param.p(), param.q()));
    }
    out.push(bip.finish());

    let lawson_params = lawson::enumerate_parameters(limits.max_m);
    let mut printed = Sweep::new(
        "j >= m E(sqrt(m^2-k^2)/m)",
        format!("Lawson (m,k) != (1,1), m <= {}", limits.max_m),
        false,
    );
    let mut alt_slack = Sweep::new(
        "j_alt >= m E(sqrt(m^2-k^2)/m), j_alt = 2 isqrt((m^2+k^2)/2) + m + k - 1",
        format!("Lawson (m,k), m <= {}", limits.max_m),
        false,
    );
    let mut alt_margin = Sweep::new(
        "Lawson value < lower bound for j_alt",
        format!("Lawson (m,k), m <= {}", limits.max_m),
        true,
    );
    for param in &lawson_params {
        let r = lawson::index_reading(param)?;
        let here = || format!("m={};k={}", r.m, r.k);
        if (r.m, r.k) != (1, 1) {
            printed.record(r.printed_slack, here);
        }
        alt_slack.record(r.alternative_slack, here);
        alt_margin.record(r.alternative_margin, here);
    }
    out.extend([printed.finish(), alt_slack.finish(), alt_margin.finish()]);

    let mut disk = Sweep::new(
        "N(r^2) >= pi (r - sqrt(2)/2)^2",
        format!("representable r^2 <= {}", limits.max_r2),
        false,
    );
    let mut sufficient = Sweep::new(
        "2 (r - sqrt(2)/2)^2 > r^2",
        format!("representable 6 <= r^2 <= {}", limits.max_r2),
        true,
    );
    for r2 in (1..=limits.max_r2).filter(|&r2| representable(r2)) {
        let here = || format!("r2={r2}");
        disk.record(
            count_lattice(r2 as f64) as f64 - disk_area_estimate(r2),
            here,
        );
        if r2 >= 6 {
            let r = (r2 as f64).sqrt();
            sufficient.record(2.0 * (r - SQRT_2 / 2.0).powi(2) - r2 as f64, here);
        }
    }
    out.extend([disk.finish(), sufficient.finish()]);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub records: Vec<ExtremalRecord>,
    pub sweeps: Vec<SweepResult>,
    /// One line per offending record or sweep.
    pub failures: Vec<String>,
    /// Positive margins that are uncomfortably small.
    pub warnings: Vec<String>,
}

fn describe(r: &ExtremalRecord) -> String {
    format!(
        "{} {} ({}, index {})",
        r.family, r.params, r.topology, r.index
    )
}

/// Aggregates records and sweeps into a verdict, warning about margins in
/// `(0, DEFAULT_WARN_BELOW)`.
pub fn report(records: Vec<ExtremalRecord>, sweeps: Vec<SweepResult>) -> VerificationReport {
    report_with_threshold(records, sweeps, DEFAULT_WARN_BELOW)
}

pub fn report_with_threshold(
    records: Vec<ExtremalRecord>,
    sweeps: Vec<SweepResult>,
    warn_below: f64,
) -> VerificationReport {
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    for r in &records {
        if !r.satisfies_margin() {
            if r.is_whitelisted() {
                failures.push(format!(
                    "{}: expected equality within {EQUALITY_TOLERANCE:e}, margin {:e}",
                    describe(r),
                    r.margin
                ));
            } else {
                failures.push(format!(
                    "{}: margin {:e} is not positive",
                    describe(r),
                    r.margin
                ));
            }
        } else if !r.is_whitelisted() && r.margin < warn_below {
            warnings.push(format!(
                "{}: margin {:e} is below {warn_below:e}; a tighter tolerance is needed to trust it",
                describe(r),
                r.margin
            ));
        }
    }
    for s in &sweeps {
        if !s.passed {
            failures.push(format!(
                "sweep '{}' on {}: worst margin {:e} at {}",
                s.name, s.domain, s.worst_margin, s.worst_location
            ));
        }
    }
    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    VerificationReport {
        verdict,
        records,
        sweeps,
        failures,
        warnings,
    }
}

/// Runs every family and every sweep.
pub fn run(limits: &Limits, grid_size: usize, warn_below: f64) -> Result<VerificationReport> {
    let records = verify_all(limits)?;
    let mut sweeps = sweep_properties(grid_size)?;
    sweeps.extend(parameter_sweeps(limits)?);
    Ok(report_with_threshold(records, sweeps, warn_below))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lawson::LawsonParameter;
    use crate::record::{Params, ValueKind, EQUALITY_WHITELIST};

    fn small() -> Limits {
        Limits::new(3, 3, 5).unwrap()
    }

    #[test]
    fn family_examples() {
        let r = verify_family(Family::Otsuki, &small()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].params, Params::Otsuki { p: 2, q: 3 });
        assert!(r[0].margin > 0.0);

        let r = verify_family(Family::BipolarLawson, &small()).unwrap();
        let eq = r
            .iter()
            .find(|r| r.params == Params::Lawson { m: 3, k: 1 })
            .unwrap();
        assert!(eq.margin.abs() < 1e-12);
        assert!(r.iter().all(|r| r.params != Params::Lawson { m: 1, k: 1 }));

        let r = verify_family(Family::Clifford, &small()).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|r| r.margin > 0.0));
        assert!(Limits::new(0, 1, 1).is_err());
    }

    #[test]
    fn whitelist_has_one_entry() {
        assert_eq!(EQUALITY_WHITELIST.len(), 1);
    }

    #[test]
    fn injected_violation_fails_and_is_named() {
        let mut records = verify_family(Family::Clifford, &small()).unwrap();
        let mut bad = records[0].clone();
        bad.value = bad.baseline + 1.0;
        bad.margin = -1.0;
        records.push(bad);
        let rep = report(records, vec![]);
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.failures.len(), 1);
        assert!(
            rep.failures[0].contains("Clifford r2=1"),
            "{}",
            rep.failures[0]
        );
    }

    #[test]
    fn equality_record_alone_passes() {
        let p = LawsonParameter::new(3, 1).unwrap();
        let rep = report(vec![bipolar_lawson_record(&p).unwrap()], vec![]);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.warnings.is_empty());
    }

    #[test]
    fn tiny_margin_warns_but_passes() {
        let mut r = verify_family(Family::Clifford, &small()).unwrap()[0].clone();
        r.margin = 1e-11;
        let rep = report(vec![r], vec![]);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.warnings.len(), 1);
    }

    #[test]
    fn failing_sweep_fails_verdict() {
        let mut s = Sweep::new("x > 0", "x", true);
        s.record(0.0, || "x=0".into());
        let rep = report(vec![], vec![s.finish()]);
        assert_eq!(rep.verdict, Verdict::Fail);
        let mut s = Sweep::new("x >= 0", "x", false);
        s.record(-1e-13, || "x=0".into());
        assert!(s.finish().passed);
    }

    #[test]
    fn sweeps_pass() {
        assert!(sweep_properties(99).is_err());
        for s in sweep_properties(200).unwrap() {
            assert!(s.passed, "{s:?}");
        }
        for s in parameter_sweeps(&Limits::new(12, 20, 400).unwrap()).unwrap() {
            assert!(s.passed, "{s:?}");
        }
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let limits = Limits::new(10, 20, 100).unwrap();
        let a = run(&limits, 100, DEFAULT_WARN_BELOW).unwrap();
        assert_eq!(a.verdict, Verdict::Pass, "{:?}", a.failures);
        let b = run(&limits, 100, DEFAULT_WARN_BELOW).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a
            .records
            .iter()
            .any(|r| r.value_kind == ValueKind::UpperBound));
    }
}
