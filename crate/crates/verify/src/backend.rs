use crate::{CheckReport, Result, VerifyError};
use euler2d_modal::{EulerForcing, ModalSample};
use ns2d_modal::NsForcing;
use spectral_grid::{apply_s_kernel_separable, resolution_tail, Grid, SpectralField, Transform};

/// Real Cartesian velocity of a modal sample.
pub fn modal_cartesian(s: &ModalSample) -> [f64; 2] {
    [s.u1.re, s.u2.re]
}

/// First iterate of a modal force computed on a periodic grid.
pub struct GridFirstIterate {
    pub transform: Transform,
    pub field: SpectralField,
}

fn radial_force_field(tr: &Transform, n: u32, profile: impl Fn(f64) -> f64) -> SpectralField {
    // real part of f_r(r) e^{inφ} along e_r
    SpectralField::sample(tr, |x| {
        let r = x[0].hypot(x[1]);
        let phi = x[1].atan2(x[0]);
        let fr = profile(r) * (n as f64 * phi).cos();
        [fr * phi.cos(), fr * phi.sin(), 0.0]
    })
}

/// Grid u₁ at time t for the viscous modal force, with its time weight
/// frozen on the clock t.
pub fn ns_grid_first_iterate(f: &NsForcing, t: f64, half_width: f64, points: usize, time_nodes: usize) -> Result<GridFirstIterate> {
    let tr = Transform::new(Grid::new(2, half_width, points)?);
    let mut force = radial_force_field(&tr, f.n, |r| f.force_profile(r));
    force.remove_mean();
    let fc = *f;
    let field = apply_s_kernel_separable(&force, move |tau| fc.time_weight(t, tau), f.nu, t, time_nodes)?;
    Ok(GridFirstIterate { transform: tr, field })
}

/// Grid u₁ at time t for the inviscid modal force (ν = 0).
pub fn euler_grid_first_iterate(f: &EulerForcing, t: f64, half_width: f64, points: usize, time_nodes: usize) -> Result<GridFirstIterate> {
    let tr = Transform::new(Grid::new(2, half_width, points)?);
    let mut force = radial_force_field(&tr, f.n, |r| f.force_profile(r));
    force.remove_mean();
    let sigma = f.sigma;
    let field = apply_s_kernel_separable(&force, move |tau| (-sigma * tau).exp(), 0.0, t, time_nodes)?;
    Ok(GridFirstIterate { transform: tr, field })
}

/// Largest admissible spectral tail for the comparison.
const COMPARE_TAIL: f64 = 1e-6;

/// sup |u_modal − u_grid| / sup |u_modal| over grid points with r ≤ radius.
///
/// The periodic grid field has zero mean, so the modal field is compared
/// after subtracting its own mean over the box.
pub fn cross_backend_compare(
    scenario: &str,
    modal: &dyn Fn(f64, f64) -> [f64; 2],
    grid: &GridFirstIterate,
    radius: f64,
    threshold: f64,
) -> Result<CheckReport> {
    let tail = resolution_tail(&grid.field);
    if tail > COMPARE_TAIL {
        return Err(VerifyError::Unresolved { tail, limit: COMPARE_TAIL });
    }
    let g = grid.transform.grid();
    if g.dim != 2 {
        return Err(VerifyError::Input("cross-backend comparison is planar".into()));
    }
    let phys = grid.field.to_physical(&grid.transform);
    let modal_values: Vec<[f64; 2]> = (0..g.len())
        .map(|flat| {
            let x = g.point(flat);
            modal(x[0], x[1])
        })
        .collect();
    let count = g.len() as f64;
    let mean = modal_values.iter().fold([0.0, 0.0], |m, v| [m[0] + v[0] / count, m[1] + v[1] / count]);
    let (mut diff, mut sup): (f64, f64) = (0.0, 0.0);
    let mut shared = 0usize;
    for (flat, m) in modal_values.iter().enumerate() {
        let x = g.point(flat);
        sup = sup.max(m[0].hypot(m[1]));
        if x[0].hypot(x[1]) <= radius {
            shared += 1;
            let d = (m[0] - mean[0] - phys[0][flat]).hypot(m[1] - mean[1] - phys[1][flat]);
            diff = diff.max(d);
        }
    }
    let value = if sup > 0.0 { diff / sup } else { diff };
    Ok(CheckReport::at_most("cross_backend", scenario, value, threshold)
        .with_measure("sup_difference", diff)
        .with_measure("sup_modal", sup)
        .with_measure("spectral_tail", tail)
        .with_measure("modal_mean_x", mean[0])
        .with_measure("modal_mean_y", mean[1])
        .with_grid("half_width", g.half_width)
        .with_grid("points_per_axis", g.points)
        .with_grid("radius", radius)
        .with_grid("shared_points", shared))
}
