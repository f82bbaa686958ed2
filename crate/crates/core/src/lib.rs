pub mod checks;
pub mod complex_core;
pub mod config;
pub mod error;
pub mod gamma;
pub mod identities;
pub mod kurepa;
pub mod output;
pub mod quadrature;
pub mod singular;
pub mod special;

pub use complex_core::{inv_sin_pi, nearest_integer_distance, pow_neg_one, ComplexPoint};
pub use config::EvalConfig;
pub use error::{Error, Result};
pub use num_complex::Complex64;
