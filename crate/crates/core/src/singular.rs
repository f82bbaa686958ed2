//! Residues and principal values at the integer singularities of `A`, `A1`
//! and `Gamma`, in closed form and numerically.
//!
//! For a function with at most a simple pole at `a`, with Laurent expansion
//! `r / (z - a) + c0 + c1 (z - a) + ...`, the principal value is `c0`. It is
//! the limit of the symmetric averages `(f(a - eps) + f(a + eps)) / 2` and the
//! mean of `f` over any small circle around `a`.

use std::f64::consts::{E, PI};
use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{factorial, gamma_ratio, inv_factorial};
use crate::kurepa::{a_integer_oracle, ORACLE_MAX_N};
use crate::special::constant_l2;

/// Largest offset of the symmetric averages in [`pv_numeric`].
pub const PV_EPS0: f64 = 0.1;
pub const PV_LEVELS: usize = 6;
pub const CONTOUR_RADIUS: f64 = 0.2;
pub const CONTOUR_NODES: usize = 64;
/// Central-difference step used by [`pv_product_rule`] when no derivative is given.
pub const DERIVATIVE_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionId {
    A,
    A1,
    Gamma,
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionId::A => "A",
            FunctionId::A1 => "A1",
            FunctionId::Gamma => "Gamma",
        })
    }
}

/// The local structure of a function at an integer.
///
/// With `order == 0` the function is regular there, `residue` is zero and
/// `principal_value` is the function value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularityInfo {
    pub location: i64,
    pub order: u8,
    pub residue: Complex64,
    pub principal_value: Complex64,
    pub function_id: FunctionId,
}

/// A numerically obtained value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub err_est: f64,
}

fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `res_{z=-n} A(z) = (-1)^n sum_{k=0}^{n-2} 1/k!` for `n >= 2`.
pub fn residue_a(n: i64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("A is regular at {}; poles sit at -2, -3, ...", -n)));
    }
    let sum: f64 = (0..=(n - 2) as usize).map(inv_factorial).sum();
    Ok(sign(n) * sum)
}

/// `res_{z=m} A1(z) = (-1)^{m-1} e + res_{z=m} A(z)`.
pub fn residue_a1(m: i64) -> f64 {
    let from_a = if m <= -2 { residue_a(-m).unwrap_or(0.0) } else { 0.0 };
    sign(m - 1) * E + from_a
}

/// `res_{z=-n} Gamma(z) = (-1)^n / n!`.
pub fn residue_gamma(minus_n: i64) -> Result<f64> {
    if minus_n > 0 {
        return Err(Error::domain(format!("Gamma is regular at {minus_n}")));
    }
    let n = -minus_n;
    Ok(sign(n) * inv_factorial(n as usize))
}

/// `p.v._{z=-n} Gamma(z) = (-1)^n (H_n - gamma) / n!`.
pub fn pv_gamma(minus_n: i64) -> Result<f64> {
    if minus_n > 0 {
        return Err(Error::domain(format!("Gamma is regular at {minus_n}; no principal value needed")));
    }
    let n = -minus_n;
    Ok(sign(n) * gamma_ratio(n as u64))
}

fn a_regular_value(n: i64) -> Result<f64> {
    match n {
        -1 => Ok(1.0),
        0 => Ok(0.0),
        n if n <= i64::from(ORACLE_MAX_N) => {
            let v = a_integer_oracle(n as u32)?.to_f64().unwrap_or(f64::INFINITY);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Overflow("A(n) for large n"))
            }
        }
        _ => Err(Error::Overflow("A(n) for large n")),
    }
}

/// `p.v._{z=-n} A(z) = (-1)^{n+1} (1 - sum_{i=1}^{n-1} Gamma'(i)/Gamma(i)^2)` for
/// `n >= 2`; at the regular integers `-1, 0, 1, ...` the value `A(n)`.
pub fn pv_a(minus_n: i64) -> Result<f64> {
    if minus_n >= -1 {
        return a_regular_value(minus_n);
    }
    let n = -minus_n;
    let sum: f64 = (1..n).map(|i| gamma_ratio((i - 1) as u64)).sum();
    Ok(sign(n + 1) * (1.0 - sum))
}

/// `p.v._{z=n} A1(z) = (-1)^n L2 + p.v._{z=n} A(z)`.
pub fn pv_a1(n: i64) -> Result<f64> {
    Ok(sign(n) * constant_l2() + pv_a(n)?)
}

/// Closed-form local data of `function` at the integer `m`.
pub fn singularity(function: FunctionId, m: i64) -> Result<SingularityInfo> {
    let real = |x: f64| Complex64::new(x, 0.0);
    let (order, residue, pv) = match function {
        FunctionId::A if m <= -2 => (1, residue_a(-m)?, pv_a(m)?),
        FunctionId::A => (0, 0.0, pv_a(m)?),
        FunctionId::A1 => (1, residue_a1(m), pv_a1(m)?),
        FunctionId::Gamma if m <= 0 => (1, residue_gamma(m)?, pv_gamma(m)?),
        FunctionId::Gamma => {
            let v = factorial((m - 1) as usize);
            if !v.is_finite() {
                return Err(Error::Overflow("Gamma(m) for large m"));
            }
            (0, 0.0, v)
        }
    };
    Ok(SingularityInfo {
        location: m,
        order,
        residue: real(residue),
        principal_value: real(pv),
        function_id: function,
    })
}

/// Principal value as the limit of symmetric averages along the real axis.
///
/// The averages at `eps_k = 0.1 * 2^-k`, `k < levels`, are even in `eps`, so a
/// Richardson table in `eps^2` extrapolates them to `eps = 0`.
pub fn pv_numeric<F>(f: F, a: i64, levels: usize) -> Result<Estimate>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if levels < 2 {
        return Err(Error::InvalidConfig(format!("pv_numeric needs at least 2 levels, got {levels}")));
    }
    let centre = a as f64;
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(levels);
    let mut scale = 0.0f64;
    for k in 0..levels {
        let eps = PV_EPS0 * 0.5f64.powi(k as i32);
        let left = f(Complex64::new(centre - eps, 0.0))?;
        let right = f(Complex64::new(centre + eps, 0.0))?;
        scale = scale.max(left.norm()).max(right.norm());
        let mut row = vec![0.5 * (left + right)];
        for j in 1..=k {
            let factor = 4f64.powi(j as i32) - 1.0;
            let prev = &rows[k - 1];
            let next = row[j - 1] + (row[j - 1] - prev[j - 1]) / factor;
            row.push(next);
        }
        rows.push(row);
    }
    let diag: Vec<Complex64> = rows.iter().enumerate().map(|(k, r)| r[k]).collect();
    let corrections: Vec<f64> = diag.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let last = *corrections.last().expect("levels >= 2");
    let value = *diag.last().expect("levels >= 2");
    let noise = 1e3 * f64::EPSILON * scale.max(1.0);
    if !value.is_finite() || (corrections.len() > 1 && last > corrections[0] && last > noise) {
        return Err(Error::NoConvergence {
            routine: "principal value extrapolation",
            limit: levels,
        });
    }
    Ok(Estimate {
        value,
        err_est: last + noise,
    })
}

fn circle_samples<F>(f: &F, a: i64, radius: f64, nodes: usize) -> Result<Vec<(Complex64, Complex64)>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(radius > 0.0 && radius < 0.5) {
        return Err(Error::InvalidConfig(format!("contour radius must lie in (0, 0.5), got {radius}")));
    }
    if nodes < 4 {
        return Err(Error::InvalidConfig(format!("contour needs at least 4 nodes, got {nodes}")));
    }
    let centre = Complex64::new(a as f64, 0.0);
    (0..nodes)
        .map(|k| {
            // offset by half a step so no node lands on the real axis
            let theta = 2.0 * PI * (k as f64 + 0.5) / nodes as f64;
            let unit = Complex64::from_polar(1.0, theta);
            f(centre + radius * unit).map(|v| (unit, v))
        })
        .collect()
}

fn circle_mean<F>(f: &F, a: i64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let samples = circle_samples(f, a, radius, nodes)?;
    Ok(samples.iter().map(|(_, v)| v).sum::<Complex64>() / nodes as f64)
}

fn circle_residue<F>(f: &F, a: i64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let samples = circle_samples(f, a, radius, nodes)?;
    Ok(samples.iter().map(|(u, v)| v * u).sum::<Complex64>() * (radius / nodes as f64))
}

/// Principal value as the mean of `f` over circles of radius `radius` and
/// `radius / 2` about `a`, extrapolated linearly in the radius.
pub fn pv_contour<F>(f: F, a: i64, radius: f64, nodes: usize) -> Result<Estimate>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let outer = circle_mean(&f, a, radius, nodes)?;
    let inner = circle_mean(&f, a, 0.5 * radius, nodes)?;
    let value = 2.0 * inner - outer;
    Ok(Estimate {
        value,
        err_est: (inner - outer).norm() + 16.0 * f64::EPSILON * (1.0 + value.norm()),
    })
}

/// Residue at `a` from the trapezoidal rule for `(1 / 2 pi i) * contour integral of f`.
pub fn residue_numeric<F>(f: F, a: i64, radius: f64, nodes: usize) -> Result<Estimate>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let outer = circle_residue(&f, a, radius, nodes)?;
    let inner = circle_residue(&f, a, 0.5 * radius, nodes)?;
    Ok(Estimate {
        value: inner,
        err_est: (inner - outer).norm() + 16.0 * f64::EPSILON * (1.0 + inner.norm()),
    })
}

/// `p.v.(f1 f2)` at a simple pole `a` of `f2`: `f1(a) p.v. f2 + f1'(a) res f2`.
///
/// Without `f1_prime`, the derivative is a central difference with step
/// [`DERIVATIVE_STEP`].
pub fn pv_product_rule<F>(f1: F, f1_prime: Option<Complex64>, f2_pv: Complex64, f2_res: Complex64, a: i64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let at = Complex64::new(a as f64, 0.0);
    let value = f1(at)?;
    let slope = match f1_prime {
        Some(d) => d,
        None => (f1(at + DERIVATIVE_STEP)? - f1(at - DERIVATIVE_STEP)?) / (2.0 * DERIVATIVE_STEP),
    };
    Ok(value * f2_pv + slope * f2_res)
}
