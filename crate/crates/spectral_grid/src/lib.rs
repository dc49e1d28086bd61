//! Fourier realization of the generic operators on a periodic box
//! [−L, L]^N, N = 2 or 3.
//!
//! * `apply_s_kernel_*`: the velocity kernel, a Leray projection convolved in
//!   time with the per-mode heat factor e^{−ν|γ|²(t−τ)}.
//! * `apply_b`: the initial-value propagator U⁰ e^{−ν|γ|²t}.
//! * `pressure_from_force`: the pressure kernel.
//! * `iterate`: the fixed-point iteration u_j = u₁ − S̄ (u_{j−1}·∇)u_{j−1}.
//!
//! Coefficients are stored as the discrete Fourier transform divided by the
//! number of points, in standard FFT ordering. The zero mode of every kernel
//! output is 0.

mod convective;
mod field;
pub mod fixtures;
mod forcing;
mod grid;
mod iterate;
mod kernels;
mod residual;

pub use convective::{convective_term, resolution_tail, ConvectiveTerm, RESOLUTION_TAIL};
pub use field::SpectralField;
pub use forcing::{DecayCertificate, GridForcing};
pub use grid::{Grid, Transform};
pub use iterate::{iterate, GridProblem, IterationResult};
pub use kernels::{
    apply_b, apply_s_kernel, apply_s_kernel_2d, apply_s_kernel_3d, apply_s_kernel_separable,
    cumulative_weights,
    leray_project, pressure_from_force, s_kernel_series,
};
pub use residual::{mild_residual, pde_residual, ResidualReport};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("forcing fails the decay certificate: boundary {boundary:e} vs interior {interior:e}")]
    Decay { boundary: f64, interior: f64 },

    #[error("fixed-point iteration diverges; correction norms {trace:?}")]
    Divergence { trace: Vec<f64> },

    #[error(transparent)]
    Quadrature(#[from] quadrature::QuadError),
}

pub type Result<T> = std::result::Result<T, GridError>;
