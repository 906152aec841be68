//! Schwarzschild metric charts with the horizon at `r = 1`.
//!
//! Points are `[time, radial, theta, phi]`. Every chart shares the angular
//! block `-r^2 dtheta^2 - r^2 sin^2(theta) dphi^2` in terms of the areal
//! radius `r`. Throughout, `u = sqrt(2r - 1)`.
//!
//! ```
//! use kahlerkit::schwarzschild::{metric_polar, radial_null_slopes, chart};
//!
//! let g = metric_polar(2.0, 1.0).unwrap();
//! assert_eq!(g[(0, 0)], 0.5);
//! let s = radial_null_slopes(&chart("mixed").unwrap(), 2.0).unwrap();
//! assert!((s.k_plus - (2.0 - 3f64.sqrt())).abs() < 1e-12);
//! ```

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Point = [f64; 4];
pub type Metric4 = Matrix4<f64>;

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn u_of(r: f64) -> f64 {
    (2.0 * r - 1.0).sqrt()
}

fn with_angular(r: f64, theta: f64, tt: f64, tr: f64, rr: f64) -> Metric4 {
    let mut g = Matrix4::zeros();
    g[(0, 0)] = tt;
    g[(0, 1)] = tr;
    g[(1, 0)] = tr;
    g[(1, 1)] = rr;
    g[(2, 2)] = -r * r;
    g[(3, 3)] = -r * r * theta.sin().powi(2);
    g
}

/// `diag((r-1)/r, -r/(r-1), -r^2, -r^2 sin^2 theta)`.
pub fn metric_polar(r: f64, theta: f64) -> Result<Metric4> {
    if r <= 0.0 || r == 1.0 || !r.is_finite() {
        return Err(domain(format!("polar chart is singular at r = {r}")));
    }
    Ok(with_angular(r, theta, (r - 1.0) / r, 0.0, -r / (r - 1.0)))
}

/// `r + ln(r - 1)` for `r > 1`.
pub fn tortoise(r: f64) -> Result<f64> {
    if r <= 1.0 {
        return Err(domain(format!("tortoise coordinate needs r > 1, got {r}")));
    }
    Ok(r + (r - 1.0).ln())
}

/// `r / (r - 1)`.
pub fn tortoise_derivative(r: f64) -> f64 {
    r / (r - 1.0)
}

/// Eddington-Finkelstein components in `(v, r, theta, phi)`.
pub fn metric_ef(r: f64, theta: f64) -> Result<Metric4> {
    if r <= 0.0 {
        return Err(domain(format!("r = {r} must be positive")));
    }
    Ok(with_angular(r, theta, (r - 1.0) / r, -1.0, 0.0))
}

fn check_half(r: f64) -> Result<()> {
    if r < 0.5 || !r.is_finite() {
        Err(domain(format!("r = {r} is below 1/2")))
    } else {
        Ok(())
    }
}

/// Components in `(tau, r, theta, phi)` with cross term `sign * u / r`.
fn metric_skew(r: f64, theta: f64, sign: f64) -> Result<Metric4> {
    check_half(r)?;
    let a = (r - 1.0) / r;
    Ok(with_angular(r, theta, a, sign * u_of(r) / r, -a))
}

/// Mixed chart: `g_tt = (r-1)/r`, `g_rr = -(r-1)/r`, `g_tr = u/r`.
pub fn metric_mixed(r: f64, theta: f64) -> Result<Metric4> {
    metric_skew(r, theta, 1.0)
}

/// `arccosec(sqrt(2r))`.
pub fn theta_of_r(r: f64) -> Result<f64> {
    check_half(r)?;
    Ok((1.0 / (2.0 * r).sqrt()).min(1.0).asin())
}

/// The mixed chart written as `F^T diag(1, -1) F` with the frame rotation
/// `F = [[cos, sin], [-sin, cos]]` by `theta_of_r`.
pub fn metric_rotated(r: f64, theta: f64) -> Result<Metric4> {
    check_half(r)?;
    let s = 1.0 / (2.0 * r).sqrt();
    let c = u_of(r) / (2.0 * r).sqrt();
    let f = nalgebra::Matrix2::new(c, s, -s, c);
    let block = f.transpose() * nalgebra::Matrix2::new(1.0, 0.0, 0.0, -1.0) * f;
    Ok(with_angular(r, theta, block[(0, 0)], block[(0, 1)], block[(1, 1)]))
}

/// Largest component difference between the rotated-frame expansion and
/// the mixed chart.
pub fn rotated_frame_check(r: f64) -> Result<f64> {
    let d = metric_rotated(r, 1.0)? - metric_mixed(r, 1.0)?;
    Ok(d.amax())
}

/// Wormhole chart: the mixed chart with cross term `sign * u / r`.
pub fn metric_wormhole(r: f64, theta: f64, positive: bool) -> Result<Metric4> {
    metric_skew(r, theta, if positive { 1.0 } else { -1.0 })
}

/// Components in `(tau, l, theta, phi)` with `r = (l^2 + 1)/2`.
pub fn metric_l(l: f64, theta: f64) -> Result<Metric4> {
    if !l.is_finite() {
        return Err(domain("l must be finite"));
    }
    let l2 = l * l;
    let a = (l2 - 1.0) / (l2 + 1.0);
    let r = (l2 + 1.0) / 2.0;
    Ok(with_angular(r, theta, a, 2.0 * l2 / (l2 + 1.0), -l2 * a))
}

fn log_term(u: f64) -> f64 {
    ((u + 1.0) / (u - 1.0)).abs().ln()
}

/// `tau = t - 2u + ln|(u+1)/(u-1)|` and
/// `R = t + (r+4) u / 3 - ln|(u+1)/(u-1)|`.
pub fn tau_r(t: f64, r: f64) -> Result<(f64, f64)> {
    if r <= 0.5 || r == 1.0 || !r.is_finite() {
        return Err(domain(format!("tau and R need r > 1/2, r != 1, got {r}")));
    }
    let u = u_of(r);
    let l = log_term(u);
    Ok((t - 2.0 * u + l, t + (r + 4.0) * u / 3.0 - l))
}

/// `d tau / dr = -u / (r - 1)`.
pub fn dtau_dr(r: f64) -> f64 {
    -u_of(r) / (r - 1.0)
}

/// `dR / dr = r^2 / ((r - 1) u)`.
pub fn d_r_dr(r: f64) -> f64 {
    r * r / ((r - 1.0) * u_of(r))
}

/// `R - tau` of the diagonalizing chart as a function of `u`:
/// `u/2 - u^3/6`.
pub fn sync_offset(u: f64) -> f64 {
    u / 2.0 - u * u * u / 6.0
}

/// Which monotone piece of [`sync_offset`] to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `r > 1`, where `R - tau < 1/3`.
    Outer,
    /// `1/2 < r < 1`, where `0 < R - tau < 1/3`.
    Inner,
}

/// `R` of the diagonalizing chart at mixed-chart coordinates `(tau, r)`.
pub fn synchronous_r(tau: f64, r: f64) -> Result<f64> {
    check_half(r)?;
    Ok(tau + sync_offset(u_of(r)))
}

/// Recovers `r` from `(tau, R)` by bisection on the monotone branch
/// followed by Newton polishing.
pub fn r_from_synchronous(tau: f64, big_r: f64, branch: Branch) -> Result<f64> {
    let d = big_r - tau;
    let top = 1.0 / 3.0;
    let (mut lo, mut hi) = match branch {
        Branch::Outer => {
            if !(d < top) {
                return Err(domain(format!("R - tau = {d} has no outer preimage")));
            }
            let mut hi = 2.0;
            while sync_offset(hi) > d {
                hi *= 2.0;
                if hi > 1e150 {
                    return Err(domain("R - tau too negative"));
                }
            }
            (1.0, hi)
        }
        Branch::Inner => {
            if !(d > 0.0 && d < top) {
                return Err(domain(format!("R - tau = {d} has no inner preimage")));
            }
            (0.0, 1.0)
        }
    };
    // F decreases on the outer piece and increases on the inner one.
    let increasing = branch == Branch::Inner;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let below = sync_offset(mid) < d;
        if below == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut u = 0.5 * (lo + hi);
    for _ in 0..4 {
        let slope = (1.0 - u * u) / 2.0;
        if slope == 0.0 {
            break;
        }
        let next = u - (sync_offset(u) - d) / slope;
        if next.is_finite() && next >= lo.min(hi) - 1e-12 && next <= hi.max(lo) + 1e-12 {
            u = next;
        }
    }
    Ok((u * u + 1.0) / 2.0)
}

/// Diagonal chart in `(tau, R, theta, phi)`:
/// `r/(r-1) (dtau^2 - (2r-1)/r^2 dR^2) - r^2 dS^2`.
pub fn metric_synchronous(tau: f64, big_r: f64, theta: f64, branch: Branch) -> Result<Metric4> {
    let r = r_from_synchronous(tau, big_r, branch)?;
    if r == 1.0 {
        return Err(domain("synchronous chart is singular at r = 1"));
    }
    let a = r / (r - 1.0);
    Ok(with_angular(r, theta, a, 0.0, -a * (2.0 * r - 1.0) / (r * r)))
}

/// A named chart with its metric evaluator.
#[derive(Clone, Copy)]
pub struct ChartMetric {
    pub name: &'static str,
    pub labels: [&'static str; 4],
    eval: fn(&Point) -> Result<Metric4>,
    at_radius: fn(f64) -> Result<Point>,
}

impl std::fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChartMetric").field("name", &self.name).finish()
    }
}

impl ChartMetric {
    pub fn new(
        name: &'static str,
        labels: [&'static str; 4],
        eval: fn(&Point) -> Result<Metric4>,
        at_radius: fn(f64) -> Result<Point>,
    ) -> Self {
        ChartMetric { name, labels, eval, at_radius }
    }

    pub fn metric(&self, x: &Point) -> Result<Metric4> {
        (self.eval)(x)
    }

    /// A point of this chart at areal radius `r`, time coordinate 0,
    /// `theta = pi/2`, `phi = 0`.
    pub fn point_at_radius(&self, r: f64) -> Result<Point> {
        (self.at_radius)(r)
    }
}

const EQUATOR: f64 = std::f64::consts::FRAC_PI_2;

fn radial_point(r: f64) -> Result<Point> {
    Ok([0.0, r, EQUATOR, 0.0])
}

fn polar_point(r: f64) -> Result<Point> {
    metric_polar(r, EQUATOR)?;
    radial_point(r)
}

fn half_point(r: f64) -> Result<Point> {
    check_half(r)?;
    radial_point(r)
}

fn ef_point(r: f64) -> Result<Point> {
    metric_ef(r, EQUATOR)?;
    radial_point(r)
}

fn sync_point(r: f64) -> Result<Point> {
    if r <= 1.0 {
        return Err(domain(format!("outer synchronous chart needs r > 1, got {r}")));
    }
    Ok([0.0, synchronous_r(0.0, r)?, EQUATOR, 0.0])
}

fn l_point(r: f64) -> Result<Point> {
    check_half(r)?;
    Ok([0.0, u_of(r), EQUATOR, 0.0])
}

/// Registered chart names.
pub const CHART_NAMES: [&str; 8] =
    ["polar", "ef", "mixed", "rotated", "synchronous", "wormhole+", "wormhole-", "lchart"];

/// Looks up a chart by name.
pub fn chart(name: &str) -> Result<ChartMetric> {
    let c = match name {
        "polar" => ChartMetric::new("polar", ["t", "r", "theta", "phi"], |x| metric_polar(x[1], x[2]), polar_point),
        "ef" => ChartMetric::new("ef", ["v", "r", "theta", "phi"], |x| metric_ef(x[1], x[2]), ef_point),
        "mixed" => ChartMetric::new("mixed", ["tau", "r", "theta", "phi"], |x| metric_mixed(x[1], x[2]), half_point),
        "rotated" => {
            ChartMetric::new("rotated", ["tau", "r", "theta", "phi"], |x| metric_rotated(x[1], x[2]), half_point)
        }
        "synchronous" => ChartMetric::new(
            "synchronous",
            ["tau", "R", "theta", "phi"],
            |x| metric_synchronous(x[0], x[1], x[2], Branch::Outer),
            sync_point,
        ),
        "wormhole+" => ChartMetric::new(
            "wormhole+",
            ["tau", "r", "theta", "phi"],
            |x| metric_wormhole(x[1], x[2], true),
            half_point,
        ),
        "wormhole-" => ChartMetric::new(
            "wormhole-",
            ["tau", "r", "theta", "phi"],
            |x| metric_wormhole(x[1], x[2], false),
            half_point,
        ),
        "lchart" => ChartMetric::new("lchart", ["tau", "l", "theta", "phi"], |x| metric_l(x[1], x[2]), l_point),
        other => return Err(Error::UnknownName { kind: "chart", name: other.to_string() }),
    };
    Ok(c)
}

/// A coordinate change with its analytic Jacobian `J[i][j] = dy_i/dx_j`.
#[derive(Clone, Copy)]
pub struct ChartTransform {
    pub source: &'static str,
    pub target: &'static str,
    pub forward: fn(&Point) -> Result<Point>,
    pub jacobian: fn(&Point) -> Result<Metric4>,
}

impl std::fmt::Debug for ChartTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChartTransform")
            .field("source", &self.source)
            .field("target", &self.target)
            .finish()
    }
}

fn radial_jacobian(dtime_dr: f64, dradial_dr: f64, dtime_dt: f64) -> Metric4 {
    let mut j = Matrix4::identity();
    j[(0, 0)] = dtime_dt;
    j[(0, 1)] = dtime_dr;
    j[(1, 1)] = dradial_dr;
    j
}

/// `v = t + r + ln(r - 1)`.
pub fn polar_to_ef() -> ChartTransform {
    ChartTransform {
        source: "polar",
        target: "ef",
        forward: |x| Ok([x[0] + tortoise(x[1])?, x[1], x[2], x[3]]),
        jacobian: |x| {
            tortoise(x[1])?;
            Ok(radial_jacobian(tortoise_derivative(x[1]), 1.0, 1.0))
        },
    }
}

/// `tau = t - 2u + ln|(u+1)/(u-1)|`.
pub fn polar_to_mixed() -> ChartTransform {
    ChartTransform {
        source: "polar",
        target: "mixed",
        forward: |x| Ok([tau_r(x[0], x[1])?.0, x[1], x[2], x[3]]),
        jacobian: |x| {
            tau_r(x[0], x[1])?;
            Ok(radial_jacobian(dtau_dr(x[1]), 1.0, 1.0))
        },
    }
}

/// Identity coordinates; the target is the rotated-frame expansion.
pub fn mixed_to_rotated() -> ChartTransform {
    ChartTransform {
        source: "mixed",
        target: "rotated",
        forward: |x| Ok(*x),
        jacobian: |_| Ok(Matrix4::identity()),
    }
}

/// `R = tau + u/2 - u^3/6`.
pub fn mixed_to_synchronous() -> ChartTransform {
    ChartTransform {
        source: "mixed",
        target: "synchronous",
        forward: |x| Ok([x[0], synchronous_r(x[0], x[1])?, x[2], x[3]]),
        jacobian: |x| {
            check_half(x[1])?;
            let mut j = Matrix4::identity();
            j[(1, 0)] = 1.0;
            j[(1, 1)] = -(x[1] - 1.0) / u_of(x[1]);
            Ok(j)
        },
    }
}

/// `r = (l^2 + 1)/2` into the `+` wormhole branch (for `l > 0`).
pub fn l_to_wormhole_plus() -> ChartTransform {
    ChartTransform {
        source: "lchart",
        target: "wormhole+",
        forward: |x| Ok([x[0], (x[1] * x[1] + 1.0) / 2.0, x[2], x[3]]),
        jacobian: |x| Ok(radial_jacobian(0.0, x[1], 1.0)),
    }
}

/// `r = (l^2 + 1)/2` into the `-` wormhole branch (for `l < 0`).
pub fn l_to_wormhole_minus() -> ChartTransform {
    ChartTransform {
        source: "lchart",
        target: "wormhole-",
        forward: |x| Ok([x[0], (x[1] * x[1] + 1.0) / 2.0, x[2], x[3]]),
        jacobian: |x| Ok(radial_jacobian(0.0, x[1], 1.0)),
    }
}

/// The five verified chains.
pub fn chains() -> [ChartTransform; 5] {
    [polar_to_ef(), polar_to_mixed(), mixed_to_rotated(), mixed_to_synchronous(), l_to_wormhole_plus()]
}

/// `||g_source - J^T g_target(T x) J||_F` at one point.
pub fn pullback_residual(source: &ChartMetric, target: &ChartMetric, t: &ChartTransform, x: &Point) -> Result<f64> {
    let gs = source.metric(x)?;
    let y = (t.forward)(x)?;
    let gt = target.metric(&y)?;
    let j = (t.jacobian)(x)?;
    Ok((gs - j.transpose() * gt * j).norm())
}

/// Maximum of [`pullback_residual`] over `points`.
pub fn pullback_check(source: &ChartMetric, target: &ChartMetric, t: &ChartTransform, points: &[Point]) -> Result<f64> {
    points
        .iter()
        .try_fold(0.0f64, |m, x| Ok(m.max(pullback_residual(source, target, t, x)?)))
}

/// Largest entrywise difference between the analytic Jacobian and central
/// differences with step `h`, each scaled by `max(1, |J_ij|)`.
pub fn jacobian_fd_residual(t: &ChartTransform, x: &Point, h: f64) -> Result<f64> {
    let j = (t.jacobian)(x)?;
    let mut worst = 0.0f64;
    for col in 0..4 {
        let mut xp = *x;
        let mut xm = *x;
        xp[col] += h;
        xm[col] -= h;
        let fp = (t.forward)(&xp)?;
        let fm = (t.forward)(&xm)?;
        for row in 0..4 {
            let fd = (fp[row] - fm[row]) / (2.0 * h);
            worst = worst.max((fd - j[(row, col)]).abs() / j[(row, col)].abs().max(1.0));
        }
    }
    Ok(worst)
}

/// `n` radii log-spaced over `[lo, hi]` inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Roots of the radial null condition
/// `g_tt k^2 + 2 g_tr k + g_rr = 0` for `k = d(time)/d(radial)`.
///
/// `k_plus` is the root `(-g_tr + sqrt(disc)) / g_tt`; an infinite root is
/// reported when `g_tt` vanishes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullSlopes {
    pub chart: String,
    pub r: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    /// Largest `|g_tt k^2 + 2 g_tr k + g_rr|` over the finite roots.
    pub residual: f64,
}

/// Null slopes of `chart` at areal radius `r`.
pub fn radial_null_slopes(chart: &ChartMetric, r: f64) -> Result<NullSlopes> {
    let x = chart.point_at_radius(r)?;
    let g = chart.metric(&x)?;
    let (a, b, c) = (g[(0, 0)], g[(0, 1)], g[(1, 1)]);
    let scale = a.abs().max(b.abs()).max(c.abs());
    let mut disc = b * b - a * c;
    if disc < 0.0 {
        if disc > -1e-14 * scale * scale {
            disc = 0.0;
        } else {
            return Err(domain(format!("no real null directions at r = {r}")));
        }
    }
    let sq = disc.sqrt();
    let (k_plus, k_minus) = if b >= 0.0 {
        let q = -b - sq;
        (c / q, q / a)
    } else {
        let q = -b + sq;
        (q / a, c / q)
    };
    let residual = [k_plus, k_minus]
        .iter()
        .filter(|k| k.is_finite())
        .map(|k| (a * k * k + 2.0 * b * k + c).abs())
        .fold(0.0, f64::max);
    Ok(NullSlopes { chart: chart.name.to_string(), r, k_plus, k_minus, residual })
}

/// `(r - u)/(r - 1)` and `-(r + u)/(r - 1)`.
pub fn mixed_closed_form_slopes(r: f64) -> (f64, f64) {
    let u = u_of(r);
    ((r - u) / (r - 1.0), -(r + u) / (r - 1.0))
}

/// Singular radii of a chart's metric, inside which a light-cone sweep may
/// not pass.
pub fn singular_radii(name: &str) -> &'static [f64] {
    match name {
        "polar" | "synchronous" => &[0.0, 1.0],
        "ef" => &[0.0],
        _ => &[0.5],
    }
}

/// Null slopes at `samples` log-spaced radii.
pub fn lightcone(name: &str, r_min: f64, r_max: f64, samples: usize) -> Result<Vec<NullSlopes>> {
    let c = chart(name)?;
    if !(r_min > 0.0 && r_max >= r_min && samples > 0) {
        return Err(domain(format!("bad range [{r_min}, {r_max}] with {samples} samples")));
    }
    if let Some(s) = singular_radii(name).iter().find(|&&s| s > r_min && s < r_max) {
        return Err(domain(format!("range [{r_min}, {r_max}] crosses r = {s}")));
    }
    log_spaced(r_min, r_max, samples)
        .into_iter()
        .map(|r| radial_null_slopes(&c, r))
        .collect()
}

/// A function `f(r)` selecting a chart from the family of embeddings.
#[derive(Clone, Copy)]
pub struct FRFunction {
    pub name: &'static str,
    pub eval: fn(f64) -> f64,
}

impl FRFunction {
    /// `f = 1`, giving the tortoise coordinate.
    pub fn unit() -> Self {
        FRFunction { name: "one", eval: |_| 1.0 }
    }

    /// `f = sqrt(2r - 1) / r`.
    pub fn skew() -> Self {
        FRFunction { name: "sqrt(2r-1)/r", eval: |r| u_of(r) / r }
    }
}

impl std::fmt::Debug for FRFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FRFunction({})", self.name)
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    if !flm.is_finite() || !frm.is_finite() {
        return Err(Error::Quadrature);
    }
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 {
        return Err(Error::Quadrature);
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    if !fa.is_finite() || !fb.is_finite() || !fm.is_finite() {
        return Err(Error::Quadrature);
    }
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `(int r f/(r-1) dr, int r/((r-1) f) dr)` from `r_ref` to `r`.
pub fn family_transform(f: &FRFunction, r_ref: f64, r: f64) -> Result<(f64, f64)> {
    let (lo, hi) = (r_ref.min(r), r_ref.max(r));
    if lo <= 1.0 && hi >= 1.0 && lo != hi {
        return Err(Error::PoleInInterval { a: r_ref, b: r });
    }
    let ff = f.eval;
    let tau = integrate(&|x| x * ff(x) / (x - 1.0), r_ref, r, 1e-10)?;
    let big_r = integrate(&|x| x / ((x - 1.0) * ff(x)), r_ref, r, 1e-10)?;
    Ok((tau, big_r))
}
