//! Special functions needed by the modal closed forms.
//!
//! Everything here works in `f64` and is pure. The incomplete gamma
//! functions are restricted to positive integer order, where finite sums
//! are exact. Kummer's function is evaluated with the Kummer transform for
//! negative arguments and a terminating large-argument expansion when the
//! parameters are integers.

mod bessel;
mod error;
mod gamma;
mod kummer;

pub use bessel::bessel_jn;
pub use error::SpecFunError;
pub use gamma::{factorial, lower_gamma_int, lower_gamma_scaled_int, pochhammer, upper_gamma_int};
pub use kummer::{contiguous_check, kummer_phi, kummer_phi_with, ContiguousResidual};

/// Accuracy controls for series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPrecision {
    pub target_abs_error: f64,
    pub max_terms: usize,
}

impl Default for EvalPrecision {
    fn default() -> Self {
        Self {
            target_abs_error: 1e-15,
            max_terms: 500,
        }
    }
}

impl EvalPrecision {
    pub fn new(target_abs_error: f64, max_terms: usize) -> Result<Self> {
        if !(target_abs_error > 0.0) || !target_abs_error.is_finite() {
            return Err(SpecFunError::Domain {
                func: "EvalPrecision",
                detail: format!("target_abs_error must be positive, got {target_abs_error}"),
            });
        }
        if max_terms == 0 {
            return Err(SpecFunError::Domain {
                func: "EvalPrecision",
                detail: "max_terms must be at least 1".into(),
            });
        }
        Ok(Self {
            target_abs_error,
            max_terms,
        })
    }
}

pub type Result<T> = std::result::Result<T, SpecFunError>;
