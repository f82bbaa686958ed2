//! Series identities around `g(z) = (z + 1) e^{-z}` and the harmonic numbers,
//! evaluated numerically so they can serve as oracles.
//!
//! The central object is
//!
//! ```text
//! f_n(z) = sum_{k>=2} (-1)^{k-1} (n+k-1)/(n+k)! z^k = R_{n+1}(g)(z) / (-z)^n,
//! ```
//!
//! where `R_{n+1}(g)` is `g` minus its Maclaurin polynomial of degree `n + 1`.
//! Summed over `n >= 1` the `f_n` give `F(z) = 1 - z - e^{-z}`.

use std::f64::consts::E;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{harmonic, inv_factorial};

/// Default bound on residuals in the identity checks.
pub const IDENTITY_TOL: f64 = 1e-10;

/// `f_n_closed` switches to the series once `|z|^n` drops below this.
pub const CLOSED_FORM_THRESHOLD: f64 = 1e-2;

/// Outcome of checking one identity on a set of samples.
///
/// `max_rel_residual` is measured against `max(1, |reference|)`, and
/// `passed` compares it with the tolerance the check ran with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub samples: usize,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub passed: bool,
}

/// Collects residuals `|computed - reference|` into an [`IdentityReport`].
#[derive(Debug, Clone, Default)]
pub struct ResidualTracker {
    samples: usize,
    max_abs: f64,
    max_rel: f64,
    violations: usize,
    failures: usize,
}

impl ResidualTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, computed: Complex64, reference: Complex64) {
        self.record_scaled(computed, reference, reference.norm().max(1.0));
    }

    /// Records `|computed - reference|` measured against an explicit `scale`.
    pub fn record_scaled(&mut self, computed: Complex64, reference: Complex64, scale: f64) {
        let abs = (computed - reference).norm();
        let rel = if scale > 0.0 { abs / scale } else { abs };
        if abs.is_nan() || rel.is_nan() {
            self.record_failure();
            return;
        }
        self.samples += 1;
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }

    /// Records a sample that could not be evaluated.
    pub fn record_failure(&mut self) {
        self.samples += 1;
        self.failures += 1;
    }

    /// Records an inequality `value <= bound`; a violation counts as a failure
    /// regardless of tolerance, and its excess is reported as the residual.
    pub fn record_bound(&mut self, value: f64, bound: f64) {
        self.samples += 1;
        let excess = value - bound;
        if !(excess <= 0.0) {
            self.violations += 1;
            self.max_abs = self.max_abs.max(excess);
            self.max_rel = self.max_rel.max(excess / bound.abs().max(1.0));
        }
    }

    pub fn finish(self, identity_id: impl Into<String>, tol: f64) -> IdentityReport {
        let passed = self.samples > 0 && self.violations == 0 && self.failures == 0 && self.max_rel <= tol;
        let (max_abs, max_rel) = if self.failures > 0 {
            (f64::NAN, f64::NAN)
        } else {
            (self.max_abs, self.max_rel)
        };
        IdentityReport {
            identity_id: identity_id.into(),
            samples: self.samples,
            max_abs_residual: max_abs,
            max_rel_residual: max_rel,
            passed,
        }
    }
}

/// `(value, sum of |terms|)` for `sum_{k=2}^{terms+1} (-1)^{k-1} (n+k-1)/(n+k)! z^k`.
fn f_n_series_parts(n: u32, z: Complex64, terms: usize) -> (Complex64, f64) {
    let n = n as usize;
    // p = z^k / (n+k)!
    let mut p = z * z * inv_factorial(n + 2);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for k in 2..terms + 2 {
        let term = p * (n + k - 1) as f64;
        if k % 2 == 0 {
            sum -= term;
        } else {
            sum += term;
        }
        magnitude += term.norm();
        p = p * z / (n + k + 1) as f64;
    }
    (sum, magnitude)
}

/// Number of series terms that takes `f_n` to full precision at `z`.
fn series_terms_for(z: Complex64) -> usize {
    (2.0 * z.norm()).ceil() as usize + 40
}

/// Truncated power series of `f_n` with `terms` terms, `k = 2 ..= terms + 1`.
pub fn f_n_series(n: u32, z: Complex64, terms: usize) -> Complex64 {
    f_n_series_parts(n, z, terms).0
}

/// `(value, sum of |terms|)` of the closed form, or the series near zero.
fn f_n_closed_parts(n: u32, z: Complex64) -> (Complex64, f64) {
    if z.norm().powi(n as i32) < CLOSED_FORM_THRESHOLD {
        return f_n_series_parts(n, z, series_terms_for(z));
    }
    let ni = n as i32;
    let inv_z = z.inv();
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    // the j = 1 coefficient vanishes
    for j in (0..=ni + 1).filter(|&j| j != 1) {
        let coeff = sign_n * if j % 2 == 0 { 1.0 } else { -1.0 } * (j - 1) as f64 * inv_factorial(j as usize);
        let power = j - ni;
        let zp = if power >= 0 { z.powi(power) } else { inv_z.powi(-power) };
        let term = coeff * zp;
        sum += term;
        magnitude += term.norm();
    }
    let exp_part = sign_n * (-z).exp() * (inv_z.powi(ni - 1) + inv_z.powi(ni));
    sum += exp_part;
    magnitude += exp_part.norm();
    (sum, magnitude)
}

/// Closed form of `f_n`, a finite Laurent polynomial plus
/// `(-1)^n e^{-z} (z^{1-n} + z^{-n})`.
///
/// The closed form cancels badly near the origin, so when `|z|^n` is below
/// [`CLOSED_FORM_THRESHOLD`] the power series is summed instead.
pub fn f_n_closed(n: u32, z: Complex64) -> Complex64 {
    f_n_closed_parts(n, z).0
}

/// Whether [`f_n_closed`] uses the closed form (rather than the series) at `z`.
pub fn f_n_uses_closed_form(n: u32, z: Complex64) -> bool {
    z.norm().powi(n as i32) >= CLOSED_FORM_THRESHOLD
}

/// Maclaurin coefficient `c_j = (-1)^{j-1} (j-1)/j!` of `g(z) = (z + 1) e^{-z}`.
fn g_coefficient(j: usize) -> f64 {
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    sign * (j as f64 - 1.0) * inv_factorial(j)
}

/// `g(z) - sum_{j=0}^{n_plus_1} c_j z^j` for `g(z) = (z + 1) e^{-z}`.
pub fn maclaurin_remainder_g(n_plus_1: u32, z: Complex64) -> Complex64 {
    let order = n_plus_1 as usize;
    if z.norm() < 1.0 {
        // the tail converges fast and avoids subtracting nearly equal numbers
        let mut sum = Complex64::new(0.0, 0.0);
        let mut zp = z.powi(order as i32 + 1);
        for j in order + 1..order + 40 {
            sum += g_coefficient(j) * zp;
            zp *= z;
        }
        sum
    } else {
        let g = (z + 1.0) * (-z).exp();
        let mut poly = Complex64::new(0.0, 0.0);
        for j in (0..=order).rev() {
            poly = poly * z + g_coefficient(j);
        }
        g - poly
    }
}

/// `e^rho (n + 1 + rho) rho^2 / (n + 2)!`, a bound on `|f_n(z)|` for `|z| <= rho`.
pub fn f_n_bound(n: u32, rho: f64) -> f64 {
    rho.exp() * (n as f64 + 1.0 + rho) * rho * rho * inv_factorial(n as usize + 2)
}

/// `sum_{k>=2} (n+k-1)/(n+k)! t^k`: the Maclaurin remainder of order `n + 1`
/// of `h(t) = (t - 1) e^t + 2` divided by `t^n`. It dominates `|f_n(z)|` at
/// `t = |z|` term by term.
pub fn h_remainder_bound(n: u32, t: f64) -> f64 {
    let n = n as usize;
    let mut p = t * t * inv_factorial(n + 2);
    let mut sum = 0.0;
    for k in 2..series_terms_for(Complex64::new(t, 0.0)) + 2 {
        sum += p * (n + k - 1) as f64;
        p *= t / (n + k + 1) as f64;
    }
    sum
}

/// Partial sum `sum_{n=1}^{n_terms} f_n(z)`.
pub fn big_f(z: Complex64, n_terms: u32) -> Complex64 {
    (1..=n_terms).map(|n| f_n_closed(n, z)).sum()
}

/// `F(z) = -e^{-z} - z + 1`.
pub fn big_f_closed(z: Complex64) -> Complex64 {
    -(-z).exp() - z + 1.0
}

/// `(z + 1) sum_{n=1}^{n_terms} sum_{k=1}^{k_terms} (-1)^k z^k / (k + n)!`.
pub fn double_sum_lhs(z: Complex64, n_terms: u32, k_terms: u32) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for n in 1..=n_terms as usize {
        let mut p = -z * inv_factorial(n + 1);
        let mut inner = Complex64::new(0.0, 0.0);
        for k in 1..=k_terms as usize {
            inner += p;
            p = -p * z / (k + n + 1) as f64;
        }
        total += inner;
    }
    (z + 1.0) * total
}

/// `-e^{-z} + (1 - e) z + 1`.
pub fn double_sum_rhs(z: Complex64) -> Complex64 {
    -(-z).exp() + (1.0 - E) * z + 1.0
}

/// `sum_{n=1}^{n_terms} (-1)^{k-1} (n+k-1)/(n+k)!`, which tends to `(-1)^{k-1}/k!`.
pub fn telescoping_inner(k: u32, n_terms: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("the telescoping sum needs k >= 1"));
    }
    let k = k as usize;
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let sum: f64 = (1..=n_terms as usize)
        .rev()
        .map(|n| (n + k - 1) as f64 * inv_factorial(n + k))
        .sum();
    Ok(sign * sum)
}

/// `sum H_n x^n / n!` against `e^x sum (-1)^{n-1} x^n / (n! n)`, both to `n_terms`.
pub fn ramanujan_sides(x: f64, n_terms: u32) -> (f64, f64) {
    let mut lhs = 0.0;
    let mut inner = 0.0;
    let mut p = 1.0;
    for n in 1..=n_terms as u64 {
        p *= x / n as f64;
        lhs += harmonic(n) * p;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        inner += sign * p / n as f64;
    }
    (lhs, x.exp() * inner)
}

/// Checks the harmonic-number series identity at `x`, `|x| <= 5`.
pub fn ramanujan_check(x: f64, n_terms: u32) -> Result<IdentityReport> {
    if !(x.abs() <= 5.0) {
        return Err(Error::domain(format!("the harmonic series check is limited to |x| <= 5, got {x}")));
    }
    let (lhs, rhs) = ramanujan_sides(x, n_terms);
    let mut t = ResidualTracker::new();
    t.record(Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0));
    Ok(t.finish(format!("ramanujan_harmonic(x={x})"), IDENTITY_TOL))
}

/// `F` from the summed `f_n` against its closed form.
pub fn check_big_f(points: &[Complex64], n_terms: u32, tol: f64) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &z in points {
        t.record(big_f(z, n_terms), big_f_closed(z));
    }
    t.finish("big_f_closed_form", tol)
}

/// Summing `k` first: `sum_k telescoping_inner(k) z^k` against `F(z)`.
pub fn check_interchange(points: &[Complex64], k_terms: u32, n_terms: u32, tol: f64) -> IdentityReport {
    let inner: Vec<f64> = (2..=k_terms).map(|k| telescoping_inner(k, n_terms).expect("k >= 2")).collect();
    let mut t = ResidualTracker::new();
    for &z in points {
        let mut zk = z * z;
        let mut sum = Complex64::new(0.0, 0.0);
        for c in &inner {
            sum += zk * *c;
            zk *= z;
        }
        t.record(sum, big_f_closed(z));
    }
    t.finish("summation_interchange", tol)
}

pub fn check_double_sum(points: &[Complex64], n_terms: u32, k_terms: u32, tol: f64) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &z in points {
        t.record(double_sum_lhs(z, n_terms, k_terms), double_sum_rhs(z));
    }
    t.finish("double_sum", tol)
}

pub fn check_telescoping(k_max: u32, n_terms: u32, tol: f64) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for k in 2..=k_max {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let want = sign * inv_factorial(k as usize);
        let got = telescoping_inner(k, n_terms).expect("k >= 2");
        t.record(Complex64::new(got, 0.0), Complex64::new(want, 0.0));
    }
    t.finish("telescoping_inner", tol)
}

pub fn check_ramanujan(xs: &[f64], n_terms: u32, tol: f64) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &x in xs {
        let (lhs, rhs) = ramanujan_sides(x, n_terms);
        t.record(Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0));
    }
    t.finish("ramanujan_harmonic", tol)
}

/// Closed form against series for each `(n, z)`; only pairs where the closed
/// form is actually in use are meaningful.
pub fn check_f_n_series(pairs: &[(u32, Complex64)], tol: f64) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &(n, z) in pairs {
        t.record(f_n_closed(n, z), f_n_series(n, z, series_terms_for(z)));
    }
    t.finish("f_n_closed_vs_series", tol)
}

/// `f_n(z) (-z)^n` against the Maclaurin remainder of `g`.
pub fn check_f_n_remainder(pairs: &[(u32, Complex64)], tol: f64) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &(n, z) in pairs {
        let lhs = f_n_closed(n, z) * (-z).powi(n as i32);
        t.record(lhs, maclaurin_remainder_g(n + 1, z));
    }
    t.finish("f_n_maclaurin_remainder", tol)
}

/// Rounding allowance for comparing `f_n_closed` with a bound.
fn closed_rounding(n: u32, z: Complex64) -> f64 {
    64.0 * f64::EPSILON * f_n_closed_parts(n, z).1
}

/// `|f_n(z)| <= f_n_bound(n, rho)` for each `(n, z, rho)` with `|z| < rho`.
pub fn check_f_n_bound(triples: &[(u32, Complex64, f64)]) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &(n, z, rho) in triples {
        t.record_bound(f_n_closed(n, z).norm(), f_n_bound(n, rho) + closed_rounding(n, z));
    }
    t.finish("f_n_bound", 0.0)
}

/// `|f_n(z)| <= h_remainder_bound(n, |z|)` up to `slack`.
pub fn check_h_bound(pairs: &[(u32, Complex64)], slack: f64) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &(n, z) in pairs {
        t.record_bound(f_n_closed(n, z).norm(), h_remainder_bound(n, z.norm()) + slack);
    }
    t.finish("h_remainder_bound", 0.0)
}

/// The truncation error of `big_f` after `n_terms` stays below the summed
/// bounds of the omitted `f_n`, up to rounding.
pub fn check_big_f_tail(points: &[Complex64], n_terms: u32, rho: f64) -> IdentityReport {
    let tail: f64 = (n_terms + 1..n_terms + 200).map(|n| f_n_bound(n, rho)).sum();
    let mut t = ResidualTracker::new();
    for &z in points {
        let rounding: f64 = (1..=n_terms).map(|n| closed_rounding(n, z)).sum::<f64>()
            + 8.0 * f64::EPSILON * big_f_closed(z).norm().max(1.0);
        let err = (big_f(z, n_terms) - big_f_closed(z)).norm();
        t.record_bound(err, tail + rounding);
    }
    t.finish("big_f_tail_bound", 0.0)
}
