//! Seeded consistency suites: functional equation, agreement of
//! representations, residues and principal values, and the series identities.
//!
//! Samples come from `ChaCha8Rng::seed_from_u64(seed)`, so a given seed
//! reproduces the same points, residuals and report text on every platform.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex_core::nearest_integer_distance;
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::identities::{self, IdentityReport, ResidualTracker, IDENTITY_TOL};
use crate::kurepa::{a1_closed, a1_series, a_closed, a_eval, a_integral, a_recurrence, a_slavic, RepresentationId};
use crate::singular::{
    pv_a, pv_a1, pv_contour, pv_gamma, pv_numeric, residue_a, residue_a1, residue_numeric, CONTOUR_NODES,
    CONTOUR_RADIUS, PV_LEVELS,
};

pub const FE_TOL: f64 = 1e-8;
pub const REPR_TOL: f64 = 1e-7;
pub const PV_TOL: f64 = 1e-6;
pub const PV_GAMMA_TOL: f64 = 1e-7;
pub const PV_FE_TOL: f64 = 1e-12;

/// Minimum distance of random samples from the integers.
pub const SAMPLE_MIN_DISTANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fe,
    Repr,
    Pv,
    Identities,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Fe => "fe",
            Suite::Repr => "repr",
            Suite::Pv => "pv",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }

    fn default_samples(self) -> usize {
        match self {
            Suite::Fe => 300,
            Suite::Repr => 100,
            Suite::Identities => 100,
            Suite::Pv | Suite::All => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Fe, Suite::Repr, Suite::Pv, Suite::Identities, Suite::All]
            .into_iter()
            .find(|x| x.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown suite '{s}'")))
    }
}

/// One line of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub suite: Suite,
    pub report: IdentityReport,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.report;
        write!(
            f,
            "{:<10} {:<32} samples={:<5} max_abs={:.3e} max_rel={:.3e} {}",
            self.suite.as_str(),
            r.identity_id,
            r.samples,
            r.max_abs_residual,
            r.max_rel_residual,
            if r.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Snaps to a multiple of 2^-32, so `z - 1` is exact for `|z| < 2^20`.
fn snap(x: f64) -> f64 {
    const SCALE: f64 = 4_294_967_296.0;
    (x * SCALE).round() / SCALE
}

fn far_from_integers(z: Complex64) -> bool {
    nearest_integer_distance(z).1 >= SAMPLE_MIN_DISTANCE
}

/// Uniform points in the disk `|z| <= radius`, snapped, at distance at least
/// [`SAMPLE_MIN_DISTANCE`] from every integer.
pub fn sample_disk(rng: &mut ChaCha8Rng, radius: f64, count: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = radius * rng.gen::<f64>().sqrt();
        let theta = TAU * rng.gen::<f64>();
        let p = Complex64::from_polar(r, theta);
        let z = Complex64::new(snap(p.re), snap(p.im));
        if z.norm() <= radius && far_from_integers(z) {
            out.push(z);
        }
    }
    out
}

/// Uniform points in a rectangle, away from the integers.
pub fn sample_rect(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64), count: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = Complex64::new(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1));
        if far_from_integers(z) {
            out.push(z);
        }
    }
    out
}

/// `|f(z) + f(z - 1) - Gamma(z + 1)| <= FE_TOL (1 + |Gamma(z + 1)|)`.
pub fn check_functional_equation<F>(id: &str, points: &[Complex64], f: F) -> IdentityReport
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut t = ResidualTracker::new();
    for &z in points {
        match (f(z), f(z - 1.0), gamma(z + 1.0)) {
            (Ok(a), Ok(b), Ok(g)) => t.record_scaled(a + b, g, 1.0 + g.norm()),
            _ => t.record_failure(),
        }
    }
    t.finish(id, FE_TOL)
}

/// Largest pairwise relative difference among the evaluators at each point.
pub fn check_agreement(id: &str, points: &[Complex64], evaluators: &[&dyn Fn(Complex64) -> Result<Complex64>]) -> IdentityReport {
    let mut t = ResidualTracker::new();
    for &z in points {
        let values: Result<Vec<Complex64>> = evaluators.iter().map(|f| f(z)).collect();
        let Ok(values) = values else {
            t.record_failure();
            continue;
        };
        let mut worst = (values[0], values[0], 1.0, 0.0);
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                let scale = a.norm().max(b.norm());
                let rel = (a - b).norm() / scale;
                if !(rel <= worst.3) {
                    worst = (*a, *b, scale, rel);
                }
            }
        }
        t.record_scaled(worst.0, worst.1, worst.2);
    }
    t.finish(id, REPR_TOL)
}

fn fe_suite(rng: &mut ChaCha8Rng, samples: usize, cfg: &EvalConfig) -> Vec<IdentityReport> {
    let points = sample_disk(rng, 6.0, samples);
    vec![
        check_functional_equation("functional_equation_A", &points, |z| {
            a_eval(z, RepresentationId::Auto, cfg).map(|o| o.value)
        }),
        check_functional_equation("functional_equation_A1", &points, |z| a1_closed(z, cfg).map(|o| o.value)),
    ]
}

fn repr_suite(rng: &mut ChaCha8Rng, samples: usize, cfg: &EvalConfig) -> Vec<IdentityReport> {
    let right = sample_rect(rng, (0.0, 3.0), (-3.0, 3.0), samples);
    let left = sample_rect(rng, (-3.0, 0.0), (-3.0, 3.0), samples);
    let integral = |z| a_integral(z, cfg).map(|o| o.value);
    let closed = |z| a_closed(z, cfg).map(|o| o.value);
    let slavic = |z| a_slavic(z, cfg).map(|o| o.value);
    let recurrence = |z| a_recurrence(z, cfg).map(|o| o.value);
    let a1c = |z| a1_closed(z, cfg).map(|o| o.value);
    let a1s = |z| a1_series(z, cfg).map(|o| o.value);
    let both: Vec<Complex64> = right.iter().chain(&left).copied().collect();
    vec![
        check_agreement("integral_closed_slavic", &right, &[&integral, &closed, &slavic]),
        check_agreement("recurrence_closed_slavic", &left, &[&recurrence, &closed, &slavic]),
        check_agreement("a1_closed_series", &both, &[&a1c, &a1s]),
    ]
}

fn pv_suite(cfg: &EvalConfig) -> Vec<IdentityReport> {
    let a = |z| a_closed(z, cfg).map(|o| o.value);
    let a1 = |z| a1_closed(z, cfg).map(|o| o.value);
    let real = |x: f64| Complex64::new(x, 0.0);

    let mut pv_a1_t = ResidualTracker::new();
    let mut res_a1_t = ResidualTracker::new();
    for m in -6..=6 {
        match (pv_contour(a1, m, CONTOUR_RADIUS, CONTOUR_NODES), pv_a1(m)) {
            (Ok(num), Ok(exact)) => pv_a1_t.record(num.value, real(exact)),
            _ => pv_a1_t.record_failure(),
        }
        match residue_numeric(a1, m, CONTOUR_RADIUS, CONTOUR_NODES) {
            Ok(num) => res_a1_t.record(num.value, real(residue_a1(m))),
            Err(_) => res_a1_t.record_failure(),
        }
    }

    let mut res_a_t = ResidualTracker::new();
    let mut pv_a_t = ResidualTracker::new();
    for n in 2..=6 {
        match (residue_numeric(a, -n, CONTOUR_RADIUS, CONTOUR_NODES), residue_a(n)) {
            (Ok(num), Ok(exact)) => res_a_t.record(num.value, real(exact)),
            _ => res_a_t.record_failure(),
        }
        match (pv_numeric(a, -n, PV_LEVELS), pv_a(-n)) {
            (Ok(num), Ok(exact)) => pv_a_t.record(num.value, real(exact)),
            _ => pv_a_t.record_failure(),
        }
    }

    let mut pv_gamma_t = ResidualTracker::new();
    for n in 0..=5 {
        match (pv_numeric(gamma, -n, PV_LEVELS), pv_gamma(-n)) {
            (Ok(num), Ok(exact)) => pv_gamma_t.record(num.value, real(exact)),
            _ => pv_gamma_t.record_failure(),
        }
    }

    let mut pv_fe_t = ResidualTracker::new();
    for n in 2..=6 {
        match (pv_a(-n), pv_a(-n - 1), pv_gamma(-n + 1)) {
            (Ok(x), Ok(y), Ok(g)) => pv_fe_t.record_scaled(real(x + y), real(g), 1.0),
            _ => pv_fe_t.record_failure(),
        }
    }

    vec![
        pv_a1_t.finish("pv_contour_A1", PV_TOL),
        res_a1_t.finish("residue_contour_A1", PV_TOL),
        res_a_t.finish("residue_contour_A", PV_TOL),
        pv_a_t.finish("pv_symmetric_A", PV_TOL),
        pv_gamma_t.finish("pv_symmetric_Gamma", PV_GAMMA_TOL),
        pv_fe_t.finish("pv_functional_equation", PV_FE_TOL),
    ]
}

fn identities_suite(rng: &mut ChaCha8Rng, samples: usize) -> Vec<IdentityReport> {
    let samples = samples.max(1);
    let points: Vec<Complex64> = (0..samples)
        .map(|_| Complex64::from_polar(3.0 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>()))
        .collect();
    let pairs: Vec<(u32, Complex64)> = points.iter().map(|&z| (rng.gen_range(1..=10u32), z)).collect();
    let closed_pairs: Vec<(u32, Complex64)> =
        pairs.iter().copied().filter(|&(n, z)| identities::f_n_uses_closed_form(n, z)).collect();
    let mut triples = Vec::with_capacity(3 * samples);
    for rho in [1.0, 2.0, 3.0] {
        for _ in 0..samples {
            let z = Complex64::from_polar(rho * rng.gen::<f64>(), TAU * rng.gen::<f64>());
            triples.push((rng.gen_range(1..=15u32), z, rho));
        }
    }
    let inside_two: Vec<Complex64> = points.iter().copied().filter(|z| z.norm() < 2.0).collect();
    vec![
        identities::check_big_f(&points, 60, IDENTITY_TOL),
        identities::check_double_sum(&points, 60, 60, IDENTITY_TOL),
        identities::check_interchange(&points, 80, 60, IDENTITY_TOL),
        identities::check_telescoping(20, 40, IDENTITY_TOL),
        identities::check_ramanujan(&[1.0, -2.0, 0.5], 60, IDENTITY_TOL),
        identities::check_f_n_series(&closed_pairs, IDENTITY_TOL),
        identities::check_f_n_remainder(&pairs, IDENTITY_TOL),
        identities::check_f_n_bound(&triples),
        identities::check_h_bound(&pairs, 1e-12),
        identities::check_big_f_tail(&inside_two, 20, 2.0),
    ]
}

/// Runs `suite` with `samples` random points (`None`: the suite's default).
///
/// Each suite draws from its own generator seeded with `seed`, so running
/// `all` gives the same lines as running the parts one by one.
pub fn run_suite(suite: Suite, samples: Option<usize>, seed: u64, cfg: &EvalConfig) -> Result<Vec<CheckLine>> {
    cfg.validate()?;
    let parts = match suite {
        Suite::All => vec![Suite::Fe, Suite::Repr, Suite::Pv, Suite::Identities],
        one => vec![one],
    };
    let mut lines = Vec::new();
    for part in parts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = samples.unwrap_or(part.default_samples());
        let reports = match part {
            Suite::Fe => fe_suite(&mut rng, n, cfg),
            Suite::Repr => repr_suite(&mut rng, n, cfg),
            Suite::Pv => pv_suite(cfg),
            Suite::Identities => identities_suite(&mut rng, n),
            Suite::All => unreachable!("expanded above"),
        };
        lines.extend(reports.into_iter().map(|report| CheckLine { suite: part, report }));
    }
    Ok(lines)
}
