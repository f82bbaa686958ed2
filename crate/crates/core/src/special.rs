//! Exponential integral on the negative axis, incomplete gamma functions with
//! complex parameter, and the constants `L2 = 1 + e Ei(-1)` and Gompertz's
//! `-e Ei(-1)`.

use std::f64::consts::E;

use num_complex::Complex64;
use serde::Serialize;

use crate::complex_core::{ensure_finite, nearest_integer_distance};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::gamma::{gamma_guarded, gamma_ratio, inv_factorial, EULER_GAMMA};

const TINY: f64 = 1e-300;
// complex Lentz sentinel; 1/TINY_C must square without overflow
const TINY_C: f64 = 1e-150;

/// Boundary between the power series and the continued fraction for `Ei`.
const EI_SERIES_LIMIT: f64 = -4.0;

/// `Ei(x) = int_{-inf}^{x} e^t / t dt` for `x < 0`.
pub fn ei_negative(x: f64) -> Result<f64> {
    if !(x < 0.0) {
        return Err(Error::domain(format!("Ei is only evaluated for x < 0, got {x}")));
    }
    if x > EI_SERIES_LIMIT {
        // gamma + ln|x| + sum x^k / (k k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= x / kf;
            let contrib = term / kf;
            sum += contrib;
            if contrib.abs() < f64::EPSILON * sum.abs() {
                break;
            }
        }
        Ok(EULER_GAMMA + (-x).ln() + sum)
    } else {
        Ok(-e1_continued_fraction(-x)?)
    }
}

/// `E1(y)` for `y >= 4` by the modified Lentz method.
fn e1_continued_fraction(y: f64) -> Result<f64> {
    let mut b = y + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < f64::EPSILON {
            return Ok(h * (-y).exp());
        }
    }
    Err(Error::NoConvergence {
        routine: "E1 continued fraction",
        limit: 1000,
    })
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("incomplete gamma needs x > 0, got {x}")))
    }
}

/// `x^a e^{-x}` for real `x > 0`.
fn prefactor(a: Complex64, x: f64) -> Complex64 {
    (a * x.ln() - x).exp()
}

/// Upper incomplete gamma `Gamma(a, x) = int_x^inf e^{-t} t^{a-1} dt`, `x > 0`.
///
/// The Legendre continued fraction converges for every `a`, but its forward
/// evaluation loses digits once `re a` exceeds `x + 1`; there the value is
/// taken as `Gamma(a) - gamma(a, x)`, which is well conditioned because the
/// lower function is then the smaller part.
pub fn upper_incomplete_gamma(a: Complex64, x: f64, cfg: &EvalConfig) -> Result<Complex64> {
    ensure_finite(a)?;
    check_x(x)?;
    if a.re > x + 1.0 {
        let g = gamma_guarded(a, cfg.pole_guard_radius)?;
        return Ok(g - lower_series(a, x, cfg)?);
    }
    upper_continued_fraction(a, x, cfg)
}

pub(crate) fn upper_continued_fraction(a: Complex64, x: f64, cfg: &EvalConfig) -> Result<Complex64> {
    // Gamma(a,x) = x^a e^{-x} / (b0 + a1/(b1 + a2/(b2 + ...))),
    // b_i = x + 2i + 1 - a, a_i = -i (i - a); modified Lentz on the denominator
    let tiny = Complex64::new(TINY_C, 0.0);
    let tol = cfg.tol_rel / 10.0;
    let mut b = Complex64::new(x + 1.0, 0.0) - a;
    let mut f = if b.norm() < TINY_C { tiny } else { b };
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for i in 1..=cfg.max_terms {
        let fi = i as f64;
        let an = -fi * (fi - a);
        b += 2.0;
        d = b + an * d;
        if d.norm() < TINY_C {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < TINY_C {
            c = tiny;
        }
        d = d.inv();
        let del = c * d;
        f *= del;
        if (del - 1.0).norm() < tol {
            return Ok(prefactor(a, x) / f);
        }
    }
    Err(Error::NoConvergence {
        routine: "upper incomplete gamma continued fraction",
        limit: cfg.max_terms,
    })
}

/// Lower incomplete gamma `gamma(a, x) = int_0^x e^{-t} t^{a-1} dt` by its
/// power series `x^a e^{-x} sum x^k / (a (a+1) ... (a+k))`.
///
/// Refuses `a` within the pole guard of a nonpositive integer.
pub fn lower_incomplete_gamma(a: Complex64, x: f64, cfg: &EvalConfig) -> Result<Complex64> {
    ensure_finite(a)?;
    check_x(x)?;
    let (m, d) = nearest_integer_distance(a);
    if m <= 0 && d < cfg.pole_guard_radius {
        return Err(Error::PoleProximity {
            z: a,
            nearest: m,
            distance: d,
            radius: cfg.pole_guard_radius,
        });
    }
    lower_series(a, x, cfg)
}

fn lower_series(a: Complex64, x: f64, cfg: &EvalConfig) -> Result<Complex64> {
    let tol = cfg.tol_rel / 10.0;
    let mut term = a.inv();
    let mut sum = term;
    for k in 1..=cfg.max_terms {
        term *= x / (a + k as f64);
        sum += term;
        // terms shrink monotonically once k > x - re a
        if (k as f64) > x - a.re && term.norm() < tol * sum.norm() {
            return Ok(prefactor(a, x) * sum);
        }
    }
    Err(Error::NoConvergence {
        routine: "lower incomplete gamma series",
        limit: cfg.max_terms,
    })
}

/// `L2 = 1 + e Ei(-1)`.
pub fn constant_l2() -> f64 {
    1.0 + E * ei_negative(-1.0).expect("Ei(-1) is in domain")
}

/// Gompertz constant `-e Ei(-1) = int_0^inf e^{-t}/(t+1) dt`.
pub fn constant_gompertz() -> f64 {
    -E * ei_negative(-1.0).expect("Ei(-1) is in domain")
}

/// `sum_{n>=1} (-1)^{n-1} / (n! n)`.
pub fn alternating_reciprocal_series(terms: usize) -> f64 {
    let mut sum = 0.0;
    for n in (1..=terms).rev() {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * inv_factorial(n) / n as f64;
    }
    sum
}

/// `L2 = 1 - sum_{n>=0} Gamma'(n+1)/Gamma(n+1)^2`.
pub fn l2_via_gamma_ratios(terms: usize) -> f64 {
    let tail: f64 = (0..terms as u64).rev().map(gamma_ratio).sum();
    1.0 - tail
}

/// `L2 = 1 + e gamma - e sum (-1)^{n-1}/(n! n)`.
pub fn l2_via_alternating_series(terms: usize) -> f64 {
    1.0 + E * EULER_GAMMA - E * alternating_reciprocal_series(terms)
}

/// A constant with enough digits and a statement of how it is computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedConstant {
    pub name: &'static str,
    pub value: f64,
    pub definition: &'static str,
}

pub fn named_constants() -> Vec<NamedConstant> {
    vec![
        NamedConstant {
            name: "euler_gamma",
            value: EULER_GAMMA,
            definition: "lim (H_n - ln n), stored to 36 digits",
        },
        NamedConstant {
            name: "e",
            value: E,
            definition: "exp(1)",
        },
        NamedConstant {
            name: "L2",
            value: constant_l2(),
            definition: "1 + e*Ei(-1)",
        },
        NamedConstant {
            name: "gompertz",
            value: constant_gompertz(),
            definition: "-e*Ei(-1) = int_0^inf e^-t/(t+1) dt",
        },
    ]
}
