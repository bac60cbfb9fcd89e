//! Carlson symmetric elliptic integrals evaluated by the duplication
//! theorem, followed by a truncated Taylor expansion around the common
//! limit of the arguments.
//!
//! Termination follows Carlson's a-priori bound: once `4^-m * Q < |A_m|`
//! the remaining series error is below roughly `TOL`.

/// Target relative error of the truncated series.
const TOL: f64 = 1e-17;

/// `R_C(x, y) = R_F(x, y, y)` for `x >= 0`, `y > 0`.
pub fn rc(x: f64, y: f64) -> f64 {
    debug_assert!(x >= 0.0 && y > 0.0);
    if x == y {
        return 1.0 / x.sqrt();
    }
    if x < y {
        // atan(√((y-x)/x)) / √(y-x), written so that x = 0 works.
        let d = y - x;
        (d / y).sqrt().asin() / d.sqrt()
    } else {
        let d = x - y;
        (d / x).sqrt().atanh() / d.sqrt()
    }
}

/// `R_C(1, 1 + e)` without cancellation for small `|e|`.
fn rc_one(e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e > 0.0 {
        let s = e.sqrt();
        s.atan() / s
    } else {
        let s = (-e).sqrt();
        s.atanh() / s
    }
}

/// `R_F(x, y, z)`: nonnegative arguments, at most one of them zero.
pub fn rf(x0: f64, y0: f64, z0: f64) -> f64 {
    debug_assert!(x0 >= 0.0 && y0 >= 0.0 && z0 >= 0.0);
    let (mut x, mut y, mut z) = (x0, y0, z0);
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * TOL).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut pow4 = 1.0;
    while pow4 * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        pow4 *= 0.25;
    }
    let big_x = (a0 - x0) * pow4 / a;
    let big_y = (a0 - y0) * pow4 / a;
    let big_z = -(big_x + big_y);
    let e2 = big_x * big_y - big_z * big_z;
    let e3 = big_x * big_y * big_z;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

/// `R_D(x, y, z)`: `x, y >= 0` (not both zero), `z > 0`.
pub fn rd(x0: f64, y0: f64, z0: f64) -> f64 {
    debug_assert!(x0 >= 0.0 && y0 >= 0.0 && z0 > 0.0);
    let (mut x, mut y, mut z) = (x0, y0, z0);
    let a0 = (x + y + 3.0 * z) / 5.0;
    let q = (0.25 * TOL).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut pow4 = 1.0;
    let mut tail = 0.0;
    while pow4 * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        tail += pow4 / (sz * (z + lambda));
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        pow4 *= 0.25;
    }
    let big_x = (a0 - x0) * pow4 / a;
    let big_y = (a0 - y0) * pow4 / a;
    let big_z = -(big_x + big_y) / 3.0;
    let xy = big_x * big_y;
    let z2 = big_z * big_z;
    let e2 = xy - 6.0 * z2;
    let e3 = (3.0 * xy - 8.0 * z2) * big_z;
    let e4 = 3.0 * (xy - z2) * z2;
    let e5 = xy * z2 * big_z;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    pow4 * series / (a * a.sqrt()) + 3.0 * tail
}

/// `R_J(x, y, z, p)`: `x, y, z >= 0` (at most one zero), `p > 0`.
pub fn rj(x0: f64, y0: f64, z0: f64, p0: f64) -> f64 {
    debug_assert!(x0 >= 0.0 && y0 >= 0.0 && z0 >= 0.0 && p0 > 0.0);
    let (mut x, mut y, mut z, mut p) = (x0, y0, z0, p0);
    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let q = (0.25 * TOL).powf(-1.0 / 6.0)
        * (a0 - x)
            .abs()
            .max((a0 - y).abs())
            .max((a0 - z).abs())
            .max((a0 - p).abs());
    let mut a = a0;
    let mut pow4 = 1.0;
    let mut tail = 0.0;
    while pow4 * q >= a.abs() {
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = pow4 * pow4 * pow4 * delta / (d * d);
        tail += pow4 / d * rc_one(e);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
        a = 0.25 * (a + lambda);
        pow4 *= 0.25;
    }
    let big_x = (a0 - x0) * pow4 / a;
    let big_y = (a0 - y0) * pow4 / a;
    let big_z = (a0 - z0) * pow4 / a;
    let big_p = -(big_x + big_y + big_z) / 2.0;
    let xyz = big_x * big_y * big_z;
    let p2 = big_p * big_p;
    let e2 = big_x * big_y + big_x * big_z + big_y * big_z - 3.0 * p2;
    let e3 = xyz + 2.0 * e2 * big_p + 4.0 * p2 * big_p;
    let e4 = (2.0 * xyz + e2 * big_p + 3.0 * p2 * big_p) * big_p;
    let e5 = xyz * p2;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    pow4 * series / (a * a.sqrt()) + 6.0 * tail
}
