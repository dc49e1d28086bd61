//! Inviscid modal example: a radial force F r^{n+1} e^{-μr} e^{inφ} e^{-σt}
//! in the plane, its first iterate u₁, the quadratic correction force f₂*
//! and the first velocity correction u₂*.
//!
//! All modal quantities are complex (the angular dependence is e^{inφ});
//! callers that want a physical field take the real part.

mod field;
mod forcing;
mod profiles;

pub use field::{ModalField, ModalSample};
pub use forcing::{
    euler_correction_force, euler_u1, euler_u2, euler_u2star, CorrectionForce, EulerForcing,
};
pub use profiles::{modal_radial_profiles, modal_tangential_profiles, ProfileQuadrature};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EulerError {
    #[error("invalid forcing: {0}")]
    Forcing(String),

    #[error("invalid evaluation point: {0}")]
    Domain(String),

    #[error("profile integral does not settle: truncation at {limit} and {refined_limit} differ by {difference:e}")]
    DivergentTail {
        limit: f64,
        refined_limit: f64,
        difference: f64,
    },

    #[error("series did not converge within {terms} terms")]
    Series { terms: usize },

    #[error(transparent)]
    SpecFun(#[from] specfun::SpecFunError),

    #[error(transparent)]
    Quadrature(#[from] quadrature::QuadError),
}

pub type Result<T> = std::result::Result<T, EulerError>;
