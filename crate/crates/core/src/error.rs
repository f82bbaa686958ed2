use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The point is too close to an integer where the requested path is singular.
    #[error("z = {z} lies within {radius:e} of the integer {nearest} (distance {distance:e})")]
    PoleProximity {
        z: Complex64,
        nearest: i64,
        distance: f64,
        radius: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{routine} did not converge within {limit} steps")]
    NoConvergence { routine: &'static str, limit: usize },

    #[error("overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("non-finite input: {0}")]
    NonFinite(Complex64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for the errors a caller should answer by switching to the
    /// residue / principal-value machinery rather than retrying.
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::PoleProximity { .. })
    }
}
