//! Deterministic composite Simpson quadrature.
//!
//! Panel counts are node counts: `panels` must be odd and at least 3, giving
//! `panels - 1` equal intervals. Sums always run left to right so a given
//! integrand and panel count reproduce bit for bit.

mod policy;
mod simpson;
mod triple;

pub use policy::{refined_panels, PrecisionPolicy};
pub use simpson::{simpson, truncated_improper, SimpsonRule, TailCheck};
pub use triple::{iterated_triple, weber_schafheitlin};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("integrand is not finite at x = {x} (value {value})")]
    NonFinite { x: f64, value: f64 },

    #[error("integrand is not finite at tau = {tau}, r_tilde = {r_tilde}, rho = {rho} (value {value})")]
    NonFiniteTriple {
        tau: f64,
        r_tilde: f64,
        rho: f64,
        value: f64,
    },

    #[error("panel count must be odd and >= 3, got {0}")]
    Panels(usize),

    #[error("invalid interval [{a}, {b}]")]
    Interval { a: f64, b: f64 },

    #[error("invalid precision policy: {0}")]
    Policy(String),
}

pub type Result<T> = std::result::Result<T, QuadError>;
