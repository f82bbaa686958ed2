use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and work limits shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub tol_rel: f64,
    pub tol_abs: f64,
    /// Cap on series terms and continued-fraction steps.
    pub max_terms: usize,
    /// Cap on the number of subintervals the adaptive quadrature may create.
    pub quad_max_panels: usize,
    /// Distance to the nearest integer below which pole-aware paths engage.
    pub pole_guard_radius: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            tol_rel: 1e-12,
            tol_abs: 1e-14,
            max_terms: 500,
            quad_max_panels: 4000,
            pole_guard_radius: 1e-3,
        }
    }
}

impl EvalConfig {
    /// Sets `tol_rel = tol` and `tol_abs = tol / 100`, the ratio of the defaults.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol_rel = tol;
        self.tol_abs = tol * 1e-2;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol_rel > 0.0 && self.tol_rel.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol_rel must be positive, got {}", self.tol_rel)));
        }
        if !(self.tol_abs > 0.0 && self.tol_abs.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol_abs must be positive, got {}", self.tol_abs)));
        }
        if self.max_terms < 8 {
            return Err(Error::InvalidConfig(format!("max_terms must be at least 8, got {}", self.max_terms)));
        }
        if self.quad_max_panels == 0 {
            return Err(Error::InvalidConfig("quad_max_panels must be positive".into()));
        }
        if !(self.pole_guard_radius > 0.0 && self.pole_guard_radius < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "pole_guard_radius must lie in (0, 0.5), got {}",
                self.pole_guard_radius
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        EvalConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_fields() {
        let base = EvalConfig::default();
        assert!(EvalConfig { tol_rel: 0.0, ..base }.validate().is_err());
        assert!(EvalConfig { tol_abs: -1.0, ..base }.validate().is_err());
        assert!(EvalConfig { max_terms: 7, ..base }.validate().is_err());
        assert!(EvalConfig { pole_guard_radius: 0.5, ..base }.validate().is_err());
        assert!(EvalConfig { pole_guard_radius: 0.0, ..base }.validate().is_err());
        assert!(EvalConfig { tol_rel: f64::NAN, ..base }.validate().is_err());
    }
}
