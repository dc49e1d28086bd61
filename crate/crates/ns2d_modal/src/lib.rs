//! Viscous modal example: a radial force F r^{n+1} e^{−μ²r²} e^{inφ} f_τ,
//! its first iterate u₁ in closed form (Kummer functions), the quadratic
//! correction force and the first velocity correction u₂* from nested
//! Simpson quadrature.
//!
//! The time weight of the force is written in the substituted variable
//! y = 1/(4μ²ν(t−τ)+1) as f_τ = y², so it refers to the evaluation time t.
//! Every closed form here keeps that convention: evaluating at a time t
//! uses the force clock of that same t.

mod clocked;
mod forcing;
mod triple;

pub use clocked::{ns_u1_clocked, ClockedProfiles};
pub use forcing::{
    bracket, ns_correction_force, ns_inner_hankel, ns_profile_derivatives, ns_profiles_r1,
    ns_u1, NsCorrectionForce, NsForcing,
};
pub use triple::{
    ns_u2, ns_u2star, Kernel, RefinementReport, TripleEngine, TripleValues,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NsError {
    #[error("invalid forcing: {0}")]
    Forcing(String),

    #[error("invalid evaluation point: {0}")]
    Domain(String),

    #[error(transparent)]
    SpecFun(#[from] specfun::SpecFunError),

    #[error(transparent)]
    Quadrature(#[from] quadrature::QuadError),
}

pub type Result<T> = std::result::Result<T, NsError>;
