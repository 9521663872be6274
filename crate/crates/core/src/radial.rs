//! Radial ODE for coclosed eigenforms on rotationally symmetric geodesic balls.
//!
//! On `[0, R] x S^n` with metric `dr^2 + theta(r)^2 g_{S^n}`, the tangential
//! harmonic extension of a coclosed sphere eigenform `xi` (eigenvalue `mu`) is
//! `Q(r) xi`, where
//!
//! ```text
//! theta^{-m} (theta^m Q')' = mu Q / theta^2,   m = n - 2p,
//! ```
//!
//! and the DtN eigenvalue is `Q'(R) / Q(R)`. The origin is a regular singular
//! point, so the solver launches from a Frobenius series at `r0` and hands over
//! to an adaptive Dormand-Prince integrator. Since `mu >= 0`, `Q` stays
//! positive and the integrator works with `(ln Q, Q'/Q)`, which stays well
//! scaled even when `Q` grows like a high power of `r`.

use std::f64::consts::PI;
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use gauss_quad::legendre::GaussLegendre;
use ode_solvers::{Dopri5, OutputType, System, Vector2};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{to_f64, Rational};

const SERIES_TERMS: usize = 80;
const RTOL: f64 = 1e-12;
const ATOL: f64 = 1e-14;

/// Warping function `theta` with `theta(0) = 0`, `theta'(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum WarpProfile {
    Euclidean,
    Spherical,
    Hyperbolic,
    /// Polynomial `theta(r) = sum_j coeffs[j] r^{j+1}` with `coeffs[0] = 1`,
    /// valid for `r < max_radius`.
    Custom { coeffs: Vec<f64>, max_radius: f64 },
}

impl WarpProfile {
    pub fn custom(coeffs: Vec<f64>, max_radius: f64) -> Result<Self> {
        if coeffs.first() != Some(&1.0) {
            return Err(Error::InvalidInput("custom warping must start with theta'(0) = 1".into()));
        }
        if max_radius.is_nan() || max_radius <= 0.0 || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("custom warping needs finite coefficients and a positive radius".into()));
        }
        Ok(WarpProfile::Custom { coeffs, max_radius })
    }

    pub fn name(&self) -> String {
        match self {
            WarpProfile::Euclidean => "euclidean".into(),
            WarpProfile::Spherical => "spherical".into(),
            WarpProfile::Hyperbolic => "hyperbolic".into(),
            WarpProfile::Custom { coeffs, .. } => {
                let c: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                format!("custom:{}", c.join(","))
            }
        }
    }

    /// Supremum of admissible radii.
    pub fn validity(&self) -> f64 {
        match self {
            WarpProfile::Spherical => PI,
            WarpProfile::Custom { max_radius, .. } => *max_radius,
            _ => f64::INFINITY,
        }
    }

    /// `(theta, theta', theta'')` at `r`.
    pub fn eval(&self, r: f64) -> (f64, f64, f64) {
        match self {
            WarpProfile::Euclidean => (r, 1.0, 0.0),
            WarpProfile::Spherical => (r.sin(), r.cos(), -r.sin()),
            WarpProfile::Hyperbolic => (r.sinh(), r.cosh(), r.sinh()),
            WarpProfile::Custom { coeffs, .. } => {
                let (mut t, mut t1, mut t2) = (0.0, 0.0, 0.0);
                for (j, c) in coeffs.iter().enumerate() {
                    let e = (j + 1) as f64;
                    t += c * r.powi(j as i32 + 1);
                    t1 += c * e * r.powi(j as i32);
                    if j >= 1 {
                        t2 += c * e * (e - 1.0) * r.powi(j as i32 - 1);
                    }
                }
                (t, t1, t2)
            }
        }
    }

    /// Taylor coefficients of `theta(r) / r` up to `r^{terms-1}`.
    fn h_series(&self, terms: usize) -> Vec<f64> {
        let mut h = vec![0.0; terms];
        match self {
            WarpProfile::Euclidean => h[0] = 1.0,
            WarpProfile::Spherical | WarpProfile::Hyperbolic => {
                let sign = if matches!(self, WarpProfile::Spherical) { -1.0 } else { 1.0 };
                let mut term = 1.0;
                for j in (0..terms).step_by(2) {
                    h[j] = term;
                    let jf = j as f64;
                    term *= sign / ((jf + 2.0) * (jf + 3.0));
                }
            }
            WarpProfile::Custom { coeffs, .. } => {
                for (j, c) in coeffs.iter().enumerate().take(terms) {
                    h[j] = *c;
                }
            }
        }
        h
    }
}

impl fmt::Display for WarpProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for WarpProfile {
    type Err = Error;

    /// `euclidean`, `spherical`, `hyperbolic`, or `custom:1,0,c2,...[@max_radius]`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(WarpProfile::Euclidean),
            "spherical" => Ok(WarpProfile::Spherical),
            "hyperbolic" => Ok(WarpProfile::Hyperbolic),
            _ => {
                let rest = s.strip_prefix("custom:").ok_or_else(|| Error::Parse(format!("unknown warping profile {s:?}")))?;
                let (list, radius) = match rest.split_once('@') {
                    Some((l, r)) => (l, r.parse::<f64>().map_err(|e| Error::Parse(e.to_string()))?),
                    None => (rest, f64::INFINITY),
                };
                let coeffs = list
                    .split(',')
                    .map(|c| c.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{c:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                WarpProfile::custom(coeffs, radius)
            }
        }
    }
}

/// One instance of the radial eigenvalue problem.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProblem {
    pub profile: WarpProfile,
    pub n: usize,
    pub p: usize,
    pub k: u32,
    pub mu: Rational,
    pub radius: f64,
}

impl RadialProblem {
    pub fn new(profile: WarpProfile, n: usize, p: usize, k: u32, mu: Rational, radius: f64) -> Result<Self> {
        let prob = RadialProblem { profile, n, p, k, mu, radius };
        prob.validate()?;
        Ok(prob)
    }

    /// Coexact family (functions when `p = 0`): `mu = (k+p)(n+k-p-1)`.
    pub fn coexact(profile: WarpProfile, n: usize, k: u32, p: usize, radius: f64) -> Result<Self> {
        if k == 0 || p + 1 > n.max(1) {
            return Err(Error::OutOfRange(format!("coexact radial problem needs k >= 1 and p <= n-1, got k={k}, p={p}")));
        }
        let (ni, ki, pi) = (n as i64, k as i64, p as i64);
        let mu = Rational::from_integer(((ki + pi) * (ni + ki - pi - 1)).into());
        RadialProblem::new(profile, n, p, k, mu, radius)
    }

    /// Volume family: `p = n`, `mu = 0`.
    pub fn volume(profile: WarpProfile, n: usize, radius: f64) -> Result<Self> {
        RadialProblem::new(profile, n, n, 1, Rational::from_integer(0.into()), radius)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.p > self.n {
            return Err(Error::OutOfRange(format!("need n >= 1 and p <= n, got n={}, p={}", self.n, self.p)));
        }
        if self.mu < Rational::from_integer(0.into()) {
            return Err(Error::InvalidInput(format!("sphere eigenvalue {} is negative", self.mu)));
        }
        if !(self.radius > 0.0 && self.radius < self.profile.validity()) {
            return Err(Error::OutOfRange(format!(
                "radius {} outside (0, {}) for {} warping",
                self.radius,
                self.profile.validity(),
                self.profile
            )));
        }
        for i in 1..=200 {
            let r = self.radius * i as f64 / 200.0;
            if self.profile.eval(r).0 <= 0.0 {
                return Err(Error::InvalidInput(format!("warping vanishes or turns negative at r = {r}")));
            }
        }
        Ok(())
    }

    fn m(&self) -> f64 {
        self.n as f64 - 2.0 * self.p as f64
    }

    /// Larger root of `s(s-1) + m s - mu = 0`.
    pub fn indicial_exponent(&self) -> f64 {
        let m = self.m();
        let mu = to_f64(&self.mu);
        0.5 * (-(m - 1.0) + ((m - 1.0).powi(2) + 4.0 * mu).sqrt())
    }
}

/// Solution profile normalized to `Q(R) = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct RadialSolution {
    /// `(r, Q(r))` samples on `[r0, R]`.
    pub samples: Vec<(f64, f64)>,
    pub nu: f64,
    pub launch_radius: f64,
    pub accepted_steps: u32,
    pub rejected_steps: u32,
}

fn series_div(u: &[f64], v: &[f64]) -> Vec<f64> {
    let mut w = vec![0.0; u.len()];
    for j in 0..u.len() {
        let s: f64 = (1..=j).map(|i| v[i] * w[j - i]).sum();
        w[j] = (u[j] - s) / v[0];
    }
    w
}

fn series_mul(u: &[f64], v: &[f64]) -> Vec<f64> {
    let mut w = vec![0.0; u.len()];
    for i in 0..u.len() {
        for j in 0..u.len() - i {
            w[i + j] += u[i] * v[j];
        }
    }
    w
}

/// Frobenius launch: `(Q, Q')` at `r0`, scaled by `r0^{-s}`.
fn frobenius_launch(prob: &RadialProblem, r0: f64) -> Result<(f64, f64)> {
    let h = prob.profile.h_series(SERIES_TERMS);
    let rh1: Vec<f64> = h.iter().enumerate().map(|(j, c)| j as f64 * c).collect();
    let a = series_div(&rh1, &h);
    let mut one = vec![0.0; SERIES_TERMS];
    one[0] = 1.0;
    let b = series_div(&one, &series_mul(&h, &h));
    let (m, mu, s) = (prob.m(), to_f64(&prob.mu), prob.indicial_exponent());
    let f = |t: f64| t * (t - 1.0) + m * t - mu;
    let mut c = vec![0.0; SERIES_TERMS];
    c[0] = 1.0;
    for j in 1..SERIES_TERMS {
        let acc: f64 = (1..=j).map(|i| (m * a[i] * (s + (j - i) as f64) - mu * b[i]) * c[j - i]).sum();
        c[j] = -acc / f(s + j as f64);
    }
    let (mut q, mut dq, mut pow) = (0.0, 0.0, 1.0);
    let mut last = 0.0;
    for (j, cj) in c.iter().enumerate() {
        q += cj * pow;
        dq += cj * (s + j as f64) * pow / r0;
        last = (cj * pow).abs();
        pow *= r0;
    }
    if !(q.is_finite() && dq.is_finite()) || last > 1e-16 * q.abs() {
        return Err(Error::Integration(format!("Frobenius series at r0 = {r0} did not converge (last term {last:e})")));
    }
    Ok((q, dq))
}

struct RadialOde {
    profile: WarpProfile,
    m: f64,
    mu: f64,
}

/// `y = (ln Q, w)` with `w = Q'/Q` obeying `w' = -w^2 - m theta'/theta w + mu/theta^2`.
impl System<f64, Vector2<f64>> for RadialOde {
    fn system(&self, r: f64, y: &Vector2<f64>, dy: &mut Vector2<f64>) {
        let (t, t1, _) = self.profile.eval(r);
        dy[0] = y[1];
        dy[1] = -y[1] * y[1] - self.m * t1 / t * y[1] + self.mu / (t * t);
    }
}

/// Solves the radial problem; `nu = Q'(R)/Q(R)`.
pub fn solve_radial_profile(prob: &RadialProblem) -> Result<RadialSolution> {
    prob.validate()?;
    let radius = prob.radius;
    let r0 = (radius / 10.0).min(0.1);
    let (q0, dq0) = frobenius_launch(prob, r0)?;
    let ode = RadialOde { profile: prob.profile.clone(), m: prob.m(), mu: to_f64(&prob.mu) };
    if q0 <= 0.0 {
        return Err(Error::Integration(format!("Frobenius launch gave Q(r0) = {q0}")));
    }
    // Sparse output records the accepted steps themselves; dense output would
    // interpolate the endpoint at lower order.
    let y0 = Vector2::new(0.0, dq0 / q0);
    let mut solver = Dopri5::from_param(
        ode,
        r0,
        radius,
        0.0,
        y0,
        RTOL,
        ATOL,
        0.9,
        0.04,
        0.2,
        10.0,
        radius - r0,
        0.0,
        100_000,
        1000,
        OutputType::Sparse,
    );
    let stats = solver
        .integrate()
        .map_err(|e| Error::Integration(format!("Dormand-Prince failed on [{r0}, {radius}]: {e:?}")))?;
    let (xs, ys) = (solver.x_out(), solver.y_out());
    let last = ys.last().ok_or_else(|| Error::Integration("integrator produced no output".into()))?;
    let end = *xs.last().unwrap_or(&r0);
    if (end - radius).abs() > 1e-9 * radius {
        return Err(Error::Integration(format!(
            "integration stopped at r = {end} before R = {radius} ({} accepted, {} rejected steps)",
            stats.accepted_steps, stats.rejected_steps
        )));
    }
    let (log_end, nu) = (last[0], last[1]);
    if !(log_end.is_finite() && nu.is_finite()) {
        return Err(Error::Integration(format!("solution diverged: ln Q(R) = {log_end}, Q'(R)/Q(R) = {nu}")));
    }
    Ok(RadialSolution {
        samples: xs.iter().zip(ys).map(|(r, y)| (*r, (y[0] - log_end).exp())).collect(),
        nu,
        launch_radius: r0,
        accepted_steps: stats.accepted_steps,
        rejected_steps: stats.rejected_steps,
    })
}

/// Adaptive Gauss-Legendre on `[a, b]` to relative tolerance `tol`.
pub fn adaptive_integral(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let rule = GaussLegendre::new(NonZeroUsize::new(20).expect("nonzero"));
    fn rec(rule: &GaussLegendre, f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
        let mid = 0.5 * (a + b);
        let left = rule.integrate(a, mid, f);
        let right = rule.integrate(mid, b, f);
        let refined = left + right;
        if (refined - whole).abs() <= tol * refined.abs().max(f64::MIN_POSITIVE) || (refined - whole).abs() < 1e-300 {
            return Ok(refined);
        }
        if depth == 0 {
            return Err(Error::Integration(format!("adaptive quadrature did not converge on [{a}, {b}]")));
        }
        Ok(rec(rule, f, a, mid, left, tol, depth - 1)? + rec(rule, f, mid, b, right, tol, depth - 1)?)
    }
    let whole = rule.integrate(a, b, f);
    rec(&rule, f, a, b, whole, tol, 40)
}

/// `theta(R)^n / int_0^R theta^n`, the boundary-to-volume ratio of `B_R`.
pub fn volume_ratio(profile: &WarpProfile, n: usize, radius: f64) -> Result<f64> {
    if !(radius > 0.0 && radius < profile.validity()) {
        return Err(Error::OutOfRange(format!("radius {radius} outside (0, {})", profile.validity())));
    }
    let integrand = |r: f64| profile.eval(r).0.powi(n as i32);
    let vol = adaptive_integral(&integrand, 0.0, radius, 1e-13)?;
    Ok(integrand(radius) / vol)
}

/// Sphere data for a separated form `Q xi + P dr ^ eta`:
/// `Delta xi = mu_xi xi`, `Delta eta = mu_eta eta`, `d eta = kappa xi`,
/// `delta xi = lambda eta` (all on the unit sphere).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparatedData {
    pub mu_xi: f64,
    pub mu_eta: f64,
    pub kappa: f64,
    pub lambda: f64,
}

/// Maximum absolute coefficients of the `xi` and `dr ^ eta` parts of `Delta w` on a grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualNorms {
    pub xi_part: f64,
    pub eta_part: f64,
}

impl ResidualNorms {
    pub fn max(&self) -> f64 {
        self.xi_part.max(self.eta_part)
    }
}

/// Evaluates the Hodge Laplacian of `w = Q xi + P dr ^ eta` in separated form.
///
/// `q` and `big_p` return `(value, first derivative, second derivative)`. With
/// `t = theta'/theta` the two coefficients are
///
/// ```text
/// xi:  mu_xi Q/theta^2 - Q'' - m t Q' - 2 t P kappa
/// eta: mu_eta P/theta^2 - (P' + (m+2) t P)' - 2 lambda Q t/theta^2
/// ```
pub fn separated_laplacian_residual(
    profile: &WarpProfile,
    n: usize,
    p: usize,
    q: &dyn Fn(f64) -> (f64, f64, f64),
    big_p: &dyn Fn(f64) -> (f64, f64, f64),
    data: SeparatedData,
    grid: &[f64],
) -> ResidualNorms {
    let m = n as f64 - 2.0 * p as f64;
    let mut out = ResidualNorms { xi_part: 0.0, eta_part: 0.0 };
    for &r in grid {
        let (th, th1, th2) = profile.eval(r);
        let t = th1 / th;
        let t1 = th2 / th - t * t;
        let (q0, q1, q2) = q(r);
        let (p0, p1, p2) = big_p(r);
        let xi = data.mu_xi * q0 / (th * th) - q2 - m * t * q1 - 2.0 * t * p0 * data.kappa;
        let inner_d = p2 + (m + 2.0) * (t1 * p0 + t * p1);
        let eta = data.mu_eta * p0 / (th * th) - inner_d - 2.0 * data.lambda * q0 * t / (th * th);
        out.xi_part = out.xi_part.max(xi.abs());
        out.eta_part = out.eta_part.max(eta.abs());
    }
    out
}

/// One row of a parameter sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub profile: String,
    pub n: usize,
    pub p: usize,
    pub k: u32,
    #[serde(rename = "R")]
    pub radius: f64,
    pub nu: f64,
}

/// Solves every problem in parallel; output order follows the input.
pub fn sweep(problems: &[RadialProblem]) -> Result<Vec<SweepRow>> {
    problems
        .par_iter()
        .map(|prob| {
            let sol = solve_radial_profile(prob)?;
            Ok(SweepRow { profile: prob.profile.name(), n: prob.n, p: prob.p, k: prob.k, radius: prob.radius, nu: sol.nu })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_matches_homogeneous_solution() {
        let sol = solve_radial_profile(&RadialProblem::coexact(WarpProfile::Euclidean, 2, 1, 1, 1.0).unwrap()).unwrap();
        assert!((sol.nu - 2.0).abs() < 1e-10, "{}", sol.nu);
        assert!((sol.samples.last().unwrap().1 - 1.0).abs() < 1e-14);
        // Q = r^2 on the samples
        for (r, q) in &sol.samples {
            assert!((q - r * r).abs() < 1e-10);
        }
    }

    #[test]
    fn spherical_volume_family_matches_quadrature() {
        let r = PI / 3.0;
        let sol = solve_radial_profile(&RadialProblem::volume(WarpProfile::Spherical, 2, r).unwrap()).unwrap();
        let s = r.sin();
        let closed = s * s / (0.5 * r - 0.25 * (2.0 * r).sin());
        assert!((sol.nu - closed).abs() < 1e-9);
        assert!((volume_ratio(&WarpProfile::Spherical, 2, r).unwrap() - closed).abs() < 1e-12);
    }

    #[test]
    fn volume_ratio_examples() {
        assert!((volume_ratio(&WarpProfile::Euclidean, 2, 1.0).unwrap() - 3.0).abs() < 1e-13);
        assert!((volume_ratio(&WarpProfile::Euclidean, 4, 2.0).unwrap() - 2.5).abs() < 1e-13);
        let s = 1f64.sinh();
        let closed = s * s / (0.25 * 2f64.sinh() - 0.5);
        assert!((volume_ratio(&WarpProfile::Hyperbolic, 2, 1.0).unwrap() - closed).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(RadialProblem::volume(WarpProfile::Spherical, 2, 4.0).is_err());
        assert!(RadialProblem::new(WarpProfile::Euclidean, 2, 1, 1, Rational::from_integer((-1).into()), 1.0).is_err());
        assert!("flat".parse::<WarpProfile>().is_err());
        assert!(WarpProfile::custom(vec![2.0], 1.0).is_err());
    }

    #[test]
    fn custom_profile_matches_builtin_taylor_polynomial() {
        // theta = r + r^3/6 + r^5/120 agrees with sinh to ~r^7/5040.
        let custom: WarpProfile = "custom:1,0,0.16666666666666666,0,0.008333333333333333".parse().unwrap();
        let a = volume_ratio(&custom, 2, 0.3).unwrap();
        let b = volume_ratio(&WarpProfile::Hyperbolic, 2, 0.3).unwrap();
        assert!((a - b).abs() < 1e-6 * b, "{a} vs {b}");
        let (t, t1, t2) = custom.eval(0.5);
        let (s, c, s2) = WarpProfile::Hyperbolic.eval(0.5);
        assert!((t - s).abs() < 1e-5 && (t1 - c).abs() < 1e-4 && (t2 - s2).abs() < 1e-3);
    }

    #[test]
    fn residual_vanishes_on_homogeneous_extension() {
        let (n, k, p) = (3usize, 2i32, 1usize);
        let s = (k + p as i32) as f64;
        let q = |r: f64| (r.powf(s), s * r.powf(s - 1.0), s * (s - 1.0) * r.powf(s - 2.0));
        let zero = |_: f64| (0.0, 0.0, 0.0);
        let mu = s * (n as f64 + k as f64 - p as f64 - 1.0);
        let data = SeparatedData { mu_xi: mu, mu_eta: 0.0, kappa: 0.0, lambda: 0.0 };
        let grid: Vec<f64> = (1..=50).map(|i| i as f64 / 50.0).collect();
        assert!(separated_laplacian_residual(&WarpProfile::Euclidean, n, p, &q, &zero, data, &grid).max() < 1e-10);
        let bad = |r: f64| (r.sin(), r.cos(), -r.sin());
        assert!(separated_laplacian_residual(&WarpProfile::Euclidean, n, p, &bad, &zero, data, &grid).max() > 1e-2);
    }

    #[test]
    fn sweep_csv_has_header() {
        let probs = vec![RadialProblem::coexact(WarpProfile::Euclidean, 2, 1, 1, 2.0).unwrap()];
        let rows = sweep(&probs).unwrap();
        assert!((rows[0].nu - 1.0).abs() < 1e-9);
        assert!(sweep_csv(&rows).unwrap().starts_with("profile,n,p,k,R,nu"));
    }
}
