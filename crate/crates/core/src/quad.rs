//! Quadrature rules used by the independent oracles.
//!
//! Two rules live here. Tanh-sinh handles integrands with algebraic
//! endpoint singularities; the integrand receives the distances to both
//! endpoints so that factors like `1 - x` can be formed without
//! cancellation. Gauss-Legendre is used for smooth integrands, mainly the
//! substituted arc integrals of the geodesic tracer.

use std::f64::consts::FRAC_PI_2;

/// Integrate `f` over `[a, b]` with the tanh-sinh (double exponential) rule.
///
/// `f` is called as `f(x, x - a, b - x)`. Levels are refined by halving the
/// step until two successive estimates agree to `tol` (relative, with an
/// absolute floor of `tol` when the integral is near zero), or until the
/// maximum level is reached.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64, f64, f64) -> f64,
{
    const MAX_LEVEL: u32 = 12;
    const T_MAX: f64 = 6.5;

    let half = 0.5 * (b - a);

    // Contribution of the node at parameter t (both signs handled by caller).
    let node = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cosh_u = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        if w == 0.0 {
            return 0.0;
        }
        // 1 - tanh(u) and 1 + tanh(u) without cancellation.
        let e = (-2.0 * u.abs()).exp();
        let small = 2.0 * e / (1.0 + e);
        let large = 2.0 / (1.0 + e);
        let (to_left, to_right) = if u >= 0.0 {
            (half * large, half * small)
        } else {
            (half * small, half * large)
        };
        if to_left <= 0.0 || to_right <= 0.0 {
            return 0.0;
        }
        let x = if to_left < to_right {
            a + to_left
        } else {
            b - to_right
        };
        w * f(x, to_left, to_right)
    };

    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += node(t) + node(-t);
        k += 1;
    }
    let mut estimate = half * h * sum;

    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        // Only the odd multiples of the new step are new nodes.
        let mut fresh = 0.0;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            fresh += node(t) + node(-t);
            k += 2;
        }
        sum += fresh;
        let next = half * h * sum;
        let converged = (next - estimate).abs() <= tol * next.abs().max(1.0);
        estimate = next;
        if converged {
            break;
        }
    }
    estimate
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let (p, p_prev) = if n == 0 { (1.0, 0.0) } else { (p1, p0) };
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// Integrate a smooth `f` over `[a, b]` with `panels` equal panels of an
/// `order`-point Gauss-Legendre rule.
pub fn composite_gauss<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|j| {
            let lo = a + j as f64 * width;
            let c = lo + 0.5 * width;
            let r = 0.5 * width;
            nodes
                .iter()
                .zip(&weights)
                .map(|(x, w)| w * f(c + r * x))
                .sum::<f64>()
                * r
        })
        .sum()
}
