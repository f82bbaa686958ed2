//! Complex helpers shared by every representation: the fixed branch of
//! `(-1)^z`, a reduced-argument `1/sin(pi z)` and integer-distance guards.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Evaluation point in the complex plane. Finiteness is checked at the public
/// entry points with [`ensure_finite`].
pub type ComplexPoint = Complex64;

pub(crate) fn ensure_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(z))
    }
}

/// `(sin(pi x), cos(pi x))` for real `x`, exact at integers and half-integers.
pub(crate) fn sin_cos_pi(x: f64) -> (f64, f64) {
    // x = n + r with |r| <= 1/2 exactly; the parity of n only flips signs, so
    // arguments one apart give exactly negated results
    let n = x.round();
    let r = x - n;
    let (s, c) = if r == 0.0 {
        (0.0, 1.0)
    } else if r.abs() == 0.5 {
        (r.signum(), 0.0)
    } else {
        (PI * r).sin_cos()
    };
    if n % 2.0 == 0.0 {
        (s, c)
    } else {
        (-s, -c)
    }
}

/// The library-wide branch `(-1)^z = exp(i pi z)`.
pub fn pow_neg_one(z: Complex64) -> Complex64 {
    let (s, c) = sin_cos_pi(z.re);
    let scale = (-PI * z.im).exp();
    Complex64::new(scale * c, scale * s)
}

/// `m = round(re z)` and `d = |z - m|`.
pub fn nearest_integer_distance(z: Complex64) -> (i64, f64) {
    let m = z.re.round();
    let d = Complex64::new(z.re - m, z.im).norm();
    (m as i64, d)
}

pub(crate) fn pole_guard(z: Complex64, radius: f64) -> Result<()> {
    let (m, d) = nearest_integer_distance(z);
    if d < radius {
        Err(Error::PoleProximity {
            z,
            nearest: m,
            distance: d,
            radius,
        })
    } else {
        Ok(())
    }
}

/// `sin(pi z)` with the nearest integer split off first.
pub(crate) fn sin_pi(z: Complex64) -> Complex64 {
    let m = z.re.round();
    let w = Complex64::new(z.re - m, z.im);
    let (s, c) = (PI * w.re).sin_cos();
    let y = PI * w.im;
    let v = Complex64::new(s * y.cosh(), c * y.sinh());
    if (m as i64).rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

/// `1/sin(pi z)` without a proximity check; only an exact integer fails.
pub(crate) fn inv_sin_pi_unguarded(z: Complex64) -> Complex64 {
    let y = PI * z.im.abs();
    if y > 700.0 {
        // |sin(pi z)| ~ e^{pi |im z|}/2 overflows; the reciprocal is zero to working precision
        return Complex64::new(0.0, 0.0);
    }
    sin_pi(z).inv()
}

/// `1/sin(pi z)`, refusing points within `guard` of an integer.
pub fn inv_sin_pi(z: Complex64, guard: f64) -> Result<Complex64> {
    ensure_finite(z)?;
    pole_guard(z, guard)?;
    Ok(inv_sin_pi_unguarded(z))
}
