//! Verification checks. Every check is a pure function of its samplers,
//! points and thresholds and returns a serializable `CheckReport`.

mod backend;
mod checks;
mod report;

pub use backend::{
    cross_backend_compare, euler_grid_first_iterate, modal_cartesian, ns_grid_first_iterate,
    GridFirstIterate,
};
pub use checks::{
    check_convergence_ratio, check_divergence, check_fourier_divergence, check_grid_residual,
    check_initial_zero, check_refinement, check_residual, polar_points, Model, ResidualInput,
    Sampler, TimeSampler,
};
pub use report::CheckReport;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("convergence ratio undefined: sup|u1| = 0")]
    UndefinedRatio,

    #[error("grid field is not resolved: spectral tail {tail:e} exceeds {limit:e}")]
    Unresolved { tail: f64, limit: f64 },

    #[error("invalid check input: {0}")]
    Input(String),

    #[error(transparent)]
    Grid(#[from] spectral_grid::GridError),

    #[error(transparent)]
    Euler(#[from] euler2d_modal::EulerError),

    #[error(transparent)]
    Ns(#[from] ns2d_modal::NsError),
}

pub type Result<T> = std::result::Result<T, VerifyError>;
