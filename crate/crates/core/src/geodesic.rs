//! Closed geodesics of the reduced (Hsiang-Lawson) metric on the orbit
//! space of `SO(2)` acting on `S³`:
//!
//! ```text
//! 4π² sin²φ (dφ² + cos²φ dθ²),   E = 4π² sin²φ,   G = 4π² sin²φ cos²φ
//! ```
//!
//! A unit-speed geodesic with minimal latitude `a` satisfies
//! `θ' = sin a cos a / (2π cos²φ sin²φ)` and
//! `φ'² = (sin²φ cos²φ - sin²a cos²a) / (4π² sin⁴φ cos²φ)`.
//!
//! The tracer integrates each monotone arc between `φ = a` and
//! `φ = π/2 - a` with `φ` as the independent variable. The substitution
//! `φ = π/4 + (π/4 - a) sin u` absorbs the inverse-square-root turning
//! points, leaving smooth integrands in `u ∈ [-π/2, π/2]` that are summed
//! with composite Gauss-Legendre. None of this touches the elliptic
//! kernel, so the traced length is an independent check of `8πq Φ(a)`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::io::{self, Write};

use crate::error::{invalid, Result};
use crate::otsuki::OtsukiParameter;
use crate::quad::gauss_legendre;

/// Default convergence tolerance of the per-arc quadrature.
pub const DEFAULT_STEP_TOL: f64 = 1e-9;

/// Largest endpoint mismatch (in `φ` and in `θ mod 2π`) accepted as closed.
pub const CLOSURE_TOLERANCE: f64 = 1e-6;

/// Default cap on exported samples.
pub const MAX_EXPORT_SAMPLES: usize = 10_000;

const GAUSS_ORDER: usize = 8;
const MIN_PANELS: usize = 16;
const MAX_PANELS: usize = 1 << 14;

/// A point `(φ, θ)` of the orbit space, `0 < φ < π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedMetricPoint {
    pub phi: f64,
    pub theta: f64,
}

impl ReducedMetricPoint {
    pub fn new(phi: f64, theta: f64) -> Result<Self> {
        if !(phi > 0.0 && phi < FRAC_PI_2) || !theta.is_finite() {
            return Err(invalid(format!(
                "reduced point needs 0 < φ < π/2, got φ = {phi}"
            )));
        }
        Ok(Self { phi, theta })
    }

    /// Metric coefficients `(E, G)` at this latitude.
    pub fn metric(&self) -> (f64, f64) {
        metric_coefficients(self.phi)
    }

    /// Orbit length `V = 2π sin φ`.
    pub fn orbit_volume(&self) -> f64 {
        TAU * self.phi.sin()
    }
}

/// `(E, G) = (4π² sin²φ, 4π² sin²φ cos²φ)`.
pub fn metric_coefficients(phi: f64) -> (f64, f64) {
    let s2 = phi.sin().powi(2);
    let e = 4.0 * PI * PI * s2;
    (e, e * phi.cos().powi(2))
}

/// `(φ', θ')` of the unit-speed geodesic with minimal latitude `a`,
/// taking the sign of `φ'` from `ascending`.
pub fn velocity(a: f64, phi: f64, ascending: bool) -> (f64, f64) {
    let (s, c) = phi.sin_cos();
    let sc_a = a.sin() * a.cos();
    let theta_dot = sc_a / (TAU * c * c * s * s);
    let radicand = ((s * c).powi(2) - sc_a * sc_a).max(0.0);
    let phi_dot = radicand.sqrt() / (TAU * s * s * c);
    (if ascending { phi_dot } else { -phi_dot }, theta_dot)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    /// Arc length from the start of the trace.
    pub s: f64,
    pub phi: f64,
    /// Unwrapped polar angle; reduce mod 2π for the point on the sphere.
    pub theta: f64,
}

impl TraceSample {
    pub fn point(&self) -> ReducedMetricPoint {
        ReducedMetricPoint {
            phi: self.phi,
            theta: self.theta.rem_euclid(TAU),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTrace {
    pub a: f64,
    pub samples: Vec<TraceSample>,
    /// Total reduced-metric arc length.
    pub length: f64,
    pub closed: bool,
    /// Endpoint mismatch in `(φ, θ mod 2π)`, max norm.
    pub closure_mismatch: f64,
    /// Number of monotone arcs traced (`2q` for a full torus).
    pub arcs: usize,
    /// Panels per arc; arc `i` spans samples `i*panels ..= (i+1)*panels`.
    pub panels_per_arc: usize,
}

/// Per-panel increments of one ascending arc, plus the `φ` nodes.
struct ArcProfile {
    phi: Vec<f64>,
    d_theta: Vec<f64>,
    d_s: Vec<f64>,
}

impl ArcProfile {
    fn theta_total(&self) -> f64 {
        self.d_theta.iter().sum()
    }

    fn s_total(&self) -> f64 {
        self.d_s.iter().sum()
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn arc_profile(a: f64, panels: usize) -> ArcProfile {
    let half = FRAC_PI_4 - a;
    let sc_a = a.sin() * a.cos();
    let sin2a = (2.0 * a).sin();
    // Integrands in u after the substitution φ = π/4 + half·sin u.
    // The radicand sin(φ-a) sin(b-φ) (sin 2φ + sin 2a)/2 is divided by
    // (φ-a)(b-φ) = half² cos²u, which cancels against dφ = half cos u du.
    let integrands = |u: f64| -> (f64, f64) {
        let phi = FRAC_PI_4 + half * u.sin();
        let w = FRAC_PI_4 + 0.5 * u;
        let to_a = 2.0 * half * w.sin().powi(2);
        let to_b = 2.0 * half * w.cos().powi(2);
        let reduced = sinc(to_a) * sinc(to_b) * 0.5 * ((2.0 * phi).sin() + sin2a);
        let root = reduced.sqrt();
        let (s, c) = phi.sin_cos();
        (sc_a / (c * root), TAU * s * s * c / root)
    };
    let (nodes, weights) = gauss_legendre(GAUSS_ORDER);
    let width = PI / panels as f64;
    let mut phi = Vec::with_capacity(panels + 1);
    let mut d_theta = Vec::with_capacity(panels);
    let mut d_s = Vec::with_capacity(panels);
    for j in 0..=panels {
        let u = -FRAC_PI_2 + j as f64 * width;
        phi.push(if j == 0 {
            a
        } else if j == panels {
            FRAC_PI_2 - a
        } else {
            FRAC_PI_4 + half * u.sin()
        });
    }
    for j in 0..panels {
        let center = -FRAC_PI_2 + (j as f64 + 0.5) * width;
        let (mut t, mut s) = (0.0, 0.0);
        for (x, w) in nodes.iter().zip(&weights) {
            let (dt, ds) = integrands(center + 0.5 * width * x);
            t += w * dt;
            s += w * ds;
        }
        d_theta.push(0.5 * width * t);
        d_s.push(0.5 * width * s);
    }
    ArcProfile { phi, d_theta, d_s }
}

/// Refines the panel count until the arc totals move by less than
/// `step_tol` (relative).
fn converged_profile(a: f64, step_tol: f64) -> ArcProfile {
    let mut panels = MIN_PANELS;
    let mut profile = arc_profile(a, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let finer = arc_profile(a, panels);
        let dt = (finer.theta_total() - profile.theta_total()).abs();
        let ds = (finer.s_total() - profile.s_total()).abs();
        profile = finer;
        if dt <= step_tol * profile.theta_total() && ds <= step_tol * profile.s_total() {
            break;
        }
    }
    profile
}

/// Traces the reduced geodesic with minimal latitude `a` through the `2q`
/// monotone arcs that close it when `Ω(a) = pπ/q`.
///
/// A value of `a` inconsistent with `param` still yields a trace; it is
/// reported with `closed = false`.
pub fn trace_geodesic(a: f64, param: &OtsukiParameter, step_tol: f64) -> Result<GeodesicTrace> {
    if !(a > 0.0 && a < FRAC_PI_4) {
        return Err(invalid(format!(
            "geodesic tracing needs 0 < a < π/4 (a = π/4 is the constant-latitude circle), got {a}"
        )));
    }
    if !(step_tol > 0.0 && step_tol.is_finite()) {
        return Err(invalid(format!(
            "step tolerance must be positive, got {step_tol}"
        )));
    }
    let profile = converged_profile(a, step_tol);
    let panels = profile.d_s.len();
    let arcs = 2 * param.q() as usize;

    let mut samples = Vec::with_capacity(arcs * panels + 1);
    let (mut s, mut theta) = (0.0, 0.0);
    samples.push(TraceSample { s, phi: a, theta });
    for arc in 0..arcs {
        let ascending = arc % 2 == 0;
        for j in 0..panels {
            // A descending arc is the time reversal of an ascending one.
            let (idx, next_phi) = if ascending {
                (j, profile.phi[j + 1])
            } else {
                (panels - 1 - j, profile.phi[panels - 1 - j])
            };
            s += profile.d_s[idx];
            theta += profile.d_theta[idx];
            samples.push(TraceSample {
                s,
                phi: next_phi,
                theta,
            });
        }
    }

    let first = samples[0];
    let last = samples[samples.len() - 1];
    let theta_gap = (last.theta - first.theta) / TAU;
    let theta_mismatch = (theta_gap - theta_gap.round()).abs() * TAU;
    let closure_mismatch = theta_mismatch.max((last.phi - first.phi).abs());
    Ok(GeodesicTrace {
        a,
        length: last.s - first.s,
        closed: closure_mismatch < CLOSURE_TOLERANCE,
        closure_mismatch,
        arcs,
        panels_per_arc: panels,
        samples,
    })
}

/// Arc length of a trace, with the closure flag carried along.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcLength {
    pub value: f64,
    pub closed: bool,
}

pub fn geodesic_length(trace: &GeodesicTrace) -> ArcLength {
    let value = match (trace.samples.first(), trace.samples.last()) {
        (Some(first), Some(last)) => last.s - first.s,
        _ => 0.0,
    };
    ArcLength {
        value,
        closed: trace.closed,
    }
}

impl GeodesicTrace {
    /// Total advance in `θ` over the trace.
    pub fn theta_advance(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(f), Some(l)) => l.theta - f.theta,
            _ => 0.0,
        }
    }

    /// The `i`-th monotone arc as an open trace.
    pub fn arc(&self, i: usize) -> Option<GeodesicTrace> {
        if i >= self.arcs {
            return None;
        }
        let lo = i * self.panels_per_arc;
        let samples = self.samples[lo..=lo + self.panels_per_arc].to_vec();
        let length = samples[samples.len() - 1].s - samples[0].s;
        Some(GeodesicTrace {
            a: self.a,
            length,
            closed: false,
            closure_mismatch: f64::NAN,
            arcs: 1,
            panels_per_arc: self.panels_per_arc,
            samples,
        })
    }

    /// At most `max_points` samples, evenly strided, always keeping both ends.
    pub fn decimated(&self, max_points: usize) -> Vec<TraceSample> {
        let n = self.samples.len();
        if n <= max_points || max_points < 2 {
            return self.samples.clone();
        }
        let stride = (n - 1).div_ceil(max_points - 1);
        let mut out: Vec<TraceSample> = self.samples.iter().step_by(stride).copied().collect();
        if !(n - 1).is_multiple_of(stride) {
            out.push(self.samples[n - 1]);
        }
        out
    }

    /// CSV with header `s,phi,theta`, LF line endings, `theta` reduced to
    /// `[0, 2π)`, at most [`MAX_EXPORT_SAMPLES`] rows.
    pub fn write_csv<W: Write>(&self, mut out: W, precision: usize) -> io::Result<()> {
        writeln!(out, "s,phi,theta")?;
        for sample in self.decimated(MAX_EXPORT_SAMPLES) {
            let p = sample.point();
            // Values that would print as 2π wrap to 0.
            let half_ulp = 0.5 * 10f64.powi(-(precision.min(300) as i32));
            let theta = if TAU - p.theta < half_ulp {
                0.0
            } else {
                p.theta
            };
            writeln!(
                out,
                "{:.prec$},{:.prec$},{:.prec$}",
                sample.s,
                p.phi,
                theta,
                prec = precision
            )?;
        }
        Ok(())
    }
}
