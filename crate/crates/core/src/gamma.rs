//! Complex gamma / log-gamma and the integer-point quantities that every
//! principal-value formula is built from.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::complex_core::{ensure_finite, inv_sin_pi_unguarded, pole_guard, sin_pi};
use crate::error::{Error, Result};

/// Euler's constant.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

/// Guard radius used by [`gamma`] and [`log_gamma`]; callers that carry an
/// [`EvalConfig`](crate::EvalConfig) use the `_guarded` variants.
pub const DEFAULT_POLE_GUARD: f64 = 1e-3;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_617_639;

// Lanczos g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest `n` with finite `n!` in `f64`.
pub const MAX_FACTORIAL: usize = 170;

const fn factorial_table() -> [f64; MAX_FACTORIAL + 1] {
    let mut t = [1.0f64; MAX_FACTORIAL + 1];
    let mut i = 1;
    while i <= MAX_FACTORIAL {
        t[i] = t[i - 1] * i as f64;
        i += 1;
    }
    t
}

static FACTORIALS: [f64; MAX_FACTORIAL + 1] = factorial_table();

/// `n!` as `f64`; `+inf` past 170.
pub fn factorial(n: usize) -> f64 {
    FACTORIALS.get(n).copied().unwrap_or(f64::INFINITY)
}

/// `1/n!`, which stays finite (and eventually underflows to zero) for any `n`.
pub fn inv_factorial(n: usize) -> f64 {
    if n <= MAX_FACTORIAL {
        1.0 / FACTORIALS[n]
    } else {
        let mut r = 1.0 / FACTORIALS[MAX_FACTORIAL];
        for k in MAX_FACTORIAL + 1..=n {
            r /= k as f64;
            if r == 0.0 {
                break;
            }
        }
        r
    }
}

fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut t = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        t += p / (x + i as f64);
    }
    let w = x + (LANCZOS_G + 0.5);
    (x + 0.5) * w.ln() - w + LN_SQRT_2PI + t.ln()
}

fn as_small_positive_integer(z: Complex64) -> Option<usize> {
    if z.im == 0.0 && z.re >= 1.0 && z.re <= (MAX_FACTORIAL + 1) as f64 && z.re.fract() == 0.0 {
        Some(z.re as usize)
    } else {
        None
    }
}

/// `log Gamma(z)` with the imaginary part fixed only modulo `2 pi`: for
/// `re z >= 1/2` it is the continuous branch of the Lanczos form, to the left
/// it comes from the reflection formula with principal logarithms.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    log_gamma_guarded(z, DEFAULT_POLE_GUARD)
}

pub fn log_gamma_guarded(z: Complex64, guard: f64) -> Result<Complex64> {
    ensure_finite(z)?;
    if z.re >= 0.5 {
        if let Some(n) = as_small_positive_integer(z) {
            return Ok(Complex64::new(factorial(n - 1).ln(), 0.0));
        }
        return Ok(lanczos_log_gamma(z));
    }
    pole_guard(z, guard)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(PI.ln() - sin_pi(z).ln() - lanczos_log_gamma(one - z))
}

/// `Gamma(z)`. Signals [`Error::Overflow`] rather than returning infinity.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    gamma_guarded(z, DEFAULT_POLE_GUARD)
}

pub fn gamma_guarded(z: Complex64, guard: f64) -> Result<Complex64> {
    ensure_finite(z)?;
    if z.re >= 0.5 {
        if let Some(n) = as_small_positive_integer(z) {
            return Ok(Complex64::new(factorial(n - 1), 0.0));
        }
        let lg = lanczos_log_gamma(z);
        if lg.re > f64::MAX.ln() {
            return Err(Error::Overflow("gamma"));
        }
        return Ok(lg.exp());
    }
    pole_guard(z, guard)?;
    let one = Complex64::new(1.0, 0.0);
    let lg_reflected = lanczos_log_gamma(one - z);
    if lg_reflected.re < 700.0 {
        Ok(PI * inv_sin_pi_unguarded(z) * (-lg_reflected).exp())
    } else {
        // Gamma(1 - z) would overflow; stay in log space
        let lg = PI.ln() - sin_pi(z).ln() - lg_reflected;
        if lg.re > f64::MAX.ln() {
            return Err(Error::Overflow("gamma"));
        }
        Ok(lg.exp())
    }
}

/// `H_n = 1 + 1/2 + ... + 1/n`, summed from the small terms upward.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

/// A harmonic number together with its index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicValue {
    pub n: u64,
    pub value: f64,
}

impl HarmonicValue {
    pub fn new(n: u64) -> Self {
        HarmonicValue { n, value: harmonic(n) }
    }
}

/// `Gamma'(n+1) / Gamma(n+1)^2 = (H_n - gamma) / n!`.
pub fn gamma_ratio(n: u64) -> f64 {
    (harmonic(n) - EULER_GAMMA) * inv_factorial(n as usize)
}
