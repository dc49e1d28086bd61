use crate::{CheckReport, Result, VerifyError};
use ns2d_modal::RefinementReport;
use spectral_grid::{pde_residual, GridForcing, IterationResult, SpectralField, Transform};

/// Planar velocity sampler (x, y) → (u_x, u_y).
pub type Sampler<'a> = &'a dyn Fn(f64, f64) -> [f64; 2];
/// Planar velocity sampler (x, y, t) → (u_x, u_y).
pub type TimeSampler<'a> = &'a dyn Fn(f64, f64, f64) -> [f64; 2];

/// Cartesian points of a polar grid, r and φ both inclusive.
pub fn polar_points(r: (f64, f64, usize), phi: (f64, f64, usize)) -> Vec<(f64, f64)> {
    let lin = |(a, b, n): (f64, f64, usize), i: usize| {
        if n <= 1 {
            a
        } else {
            a + (b - a) * i as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(r.2 * phi.2);
    for i in 0..r.2 {
        let rr = lin(r, i);
        for j in 0..phi.2 {
            let p = lin(phi, j);
            out.push((rr * p.cos(), rr * p.sin()));
        }
    }
    out
}

/// max |div u| / max |∇u| with central differences of step h.
pub fn check_divergence(scenario: &str, u: Sampler, points: &[(f64, f64)], h: f64) -> CheckReport {
    let (mut div, mut grad): (f64, f64) = (0.0, 0.0);
    for &(x, y) in points {
        let (xp, xm) = (u(x + h, y), u(x - h, y));
        let (yp, ym) = (u(x, y + h), u(x, y - h));
        let dxx = (xp[0] - xm[0]) / (2.0 * h);
        let dyx = (xp[1] - xm[1]) / (2.0 * h);
        let dxy = (yp[0] - ym[0]) / (2.0 * h);
        let dyy = (yp[1] - ym[1]) / (2.0 * h);
        div = div.max((dxx + dyy).abs());
        grad = grad.max(dxx.abs()).max(dyx.abs()).max(dxy.abs()).max(dyy.abs());
    }
    let ratio = if grad > 0.0 { div / grad } else { 0.0 };
    CheckReport::at_most("divergence", scenario, ratio, 1e-6)
        .with_measure("max_div", div)
        .with_measure("max_grad", grad)
        .with_grid("points", points.len())
        .with_grid("h", h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Euler,
    Ns { nu: f64 },
}

impl Model {
    fn nu(&self) -> f64 {
        match self {
            Model::Euler => 0.0,
            Model::Ns { nu } => *nu,
        }
    }
}

pub struct ResidualInput<'a> {
    pub model: Model,
    pub u: TimeSampler<'a>,
    pub p: Option<&'a dyn Fn(f64, f64, f64) -> f64>,
    pub f: TimeSampler<'a>,
    /// Include (u·∇)u; off for the linear system of the first iterate.
    pub convection: bool,
    pub points: &'a [(f64, f64)],
    pub times: &'a [f64],
    /// Relative threshold.
    pub threshold: f64,
}

const H_FIRST: f64 = 1e-3;
const H_SECOND: f64 = 1e-2;
const H_TIME: f64 = 1e-3;

fn jacobian(u: TimeSampler, x: f64, y: f64, t: f64, h: f64) -> [[f64; 2]; 2] {
    let (xp, xm) = (u(x + h, y, t), u(x - h, y, t));
    let (yp, ym) = (u(x, y + h, t), u(x, y - h, t));
    [
        [(xp[0] - xm[0]) / (2.0 * h), (yp[0] - ym[0]) / (2.0 * h)],
        [(xp[1] - xm[1]) / (2.0 * h), (yp[1] - ym[1]) / (2.0 * h)],
    ]
}

fn vorticity(u: TimeSampler, x: f64, y: f64, t: f64) -> f64 {
    let j = jacobian(u, x, y, t, H_FIRST);
    j[1][0] - j[0][1]
}

fn curl(f: TimeSampler, x: f64, y: f64, t: f64) -> f64 {
    vorticity(f, x, y, t)
}

/// Sup-norm of the momentum residual ∂_t u − νΔu [+ (u·∇)u] + ∇p − f.
///
/// With a pressure sampler the residual is taken componentwise and
/// normalised by sup|f|. Without one, the gradient part is removed by
/// taking the curl, and the check compares sup|curl R| with sup|curl f|.
pub fn check_residual(scenario: &str, input: &ResidualInput) -> CheckReport {
    let nu = input.model.nu();
    let u = input.u;
    let (mut worst, mut scale): (f64, f64) = (0.0, 0.0);
    for &t in input.times {
        for &(x, y) in input.points {
            match input.p {
                Some(p) => {
                    let h = H_SECOND;
                    let c = u(x, y, t);
                    let dt = {
                        let (a, b) = (u(x, y, t + H_TIME), u(x, y, t - H_TIME));
                        [(a[0] - b[0]) / (2.0 * H_TIME), (a[1] - b[1]) / (2.0 * H_TIME)]
                    };
                    let (xp, xm, yp, ym) = (u(x + h, y, t), u(x - h, y, t), u(x, y + h, t), u(x, y - h, t));
                    let lap = [
                        (xp[0] + xm[0] + yp[0] + ym[0] - 4.0 * c[0]) / (h * h),
                        (xp[1] + xm[1] + yp[1] + ym[1] - 4.0 * c[1]) / (h * h),
                    ];
                    let j = jacobian(u, x, y, t, H_FIRST);
                    let gp = [
                        (p(x + H_FIRST, y, t) - p(x - H_FIRST, y, t)) / (2.0 * H_FIRST),
                        (p(x, y + H_FIRST, t) - p(x, y - H_FIRST, t)) / (2.0 * H_FIRST),
                    ];
                    let f = (input.f)(x, y, t);
                    for i in 0..2 {
                        let conv = if input.convection { c[0] * j[i][0] + c[1] * j[i][1] } else { 0.0 };
                        let r = dt[i] - nu * lap[i] + conv + gp[i] - f[i];
                        worst = worst.max(r.abs());
                    }
                    scale = scale.max(f[0].hypot(f[1]));
                }
                None => {
                    let h = H_SECOND;
                    let w = |x: f64, y: f64, t: f64| vorticity(u, x, y, t);
                    let dt = (w(x, y, t + H_TIME) - w(x, y, t - H_TIME)) / (2.0 * H_TIME);
                    // fourth-order five-point Laplacian
                    let w0 = w(x, y, t);
                    let axis = |a: f64, b: f64, c: f64, d: f64| -a + 16.0 * b + 16.0 * c - d;
                    let lap = (axis(w(x + 2.0 * h, y, t), w(x + h, y, t), w(x - h, y, t), w(x - 2.0 * h, y, t))
                        + axis(w(x, y + 2.0 * h, t), w(x, y + h, t), w(x, y - h, t), w(x, y - 2.0 * h, t))
                        - 60.0 * w0)
                        / (12.0 * h * h);
                    let conv = if input.convection {
                        let c = u(x, y, t);
                        let wx = (w(x + H_FIRST, y, t) - w(x - H_FIRST, y, t)) / (2.0 * H_FIRST);
                        let wy = (w(x, y + H_FIRST, t) - w(x, y - H_FIRST, t)) / (2.0 * H_FIRST);
                        c[0] * wx + c[1] * wy
                    } else {
                        0.0
                    };
                    let cf = curl(input.f, x, y, t);
                    worst = worst.max((dt - nu * lap + conv - cf).abs());
                    scale = scale.max(cf.abs());
                }
            }
        }
    }
    let value = if scale > 0.0 { worst / scale } else { worst };
    let name = if input.p.is_some() { "residual" } else { "residual_curl" };
    CheckReport::at_most(name, scenario, value, input.threshold)
        .with_measure("sup_residual", worst)
        .with_measure("sup_forcing", scale)
        .with_grid("points", input.points.len())
        .with_grid("times", input.times.len())
        .with_grid("nu", nu)
}

/// sup|u₂*| / sup|u₁| over matching samples; passes iff < 1.
pub fn check_convergence_ratio(scenario: &str, u1: &[f64], u2star: &[f64], regime: bool) -> Result<CheckReport> {
    if u1.len() != u2star.len() {
        return Err(VerifyError::Input("sample counts differ".into()));
    }
    let s1 = u1.iter().cloned().fold(0.0, f64::max);
    let s2 = u2star.iter().cloned().fold(0.0, f64::max);
    if s1 == 0.0 {
        return Err(VerifyError::UndefinedRatio);
    }
    let ratio = s2 / s1;
    Ok(CheckReport::new("convergence_ratio", scenario, ratio, 1.0, ratio < 1.0)
        .with_measure("sup_u1", s1)
        .with_measure("sup_u2star", s2)
        .with_measure("regime", if regime { 1.0 } else { 0.0 })
        .with_grid("points", u1.len()))
}

/// Passes iff every sample is exactly zero.
pub fn check_initial_zero(scenario: &str, values: &[f64]) -> CheckReport {
    let worst = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    CheckReport::new("initial_zero", scenario, worst, 0.0, worst == 0.0).with_grid("points", values.len())
}

/// One report per refinement level, plus the reported-only step check.
pub fn check_refinement(scenario: &str, rep: &RefinementReport) -> Vec<CheckReport> {
    let radii = format!("{:?}", rep.radii);
    vec![
        CheckReport::at_most("refinement_inner", scenario, rep.inner_difference, rep.inner_tol).with_grid("radii", &radii),
        CheckReport::at_most("refinement_middle", scenario, rep.middle_difference, rep.middle_tol).with_grid("radii", &radii),
        CheckReport::at_most("refinement_outer", scenario, rep.outer_difference, rep.outer_tol).with_grid("radii", &radii),
        CheckReport::new("inner_step_halving", scenario, rep.resolution_relative, f64::INFINITY, true)
            .with_grid("radii", &radii)
            .with_grid("gated", false),
    ]
}

/// Largest Fourier-space divergence ratio over a set of fields; ≤ 1e-10.
pub fn check_fourier_divergence(scenario: &str, fields: &[SpectralField]) -> CheckReport {
    let worst = fields.iter().map(|f| f.divergence_ratio()).fold(0.0, f64::max);
    CheckReport::at_most("fourier_divergence", scenario, worst, 1e-10).with_grid("fields", fields.len())
}

/// Spectral PDE residual of a grid run against 10·tol.
pub fn check_grid_residual(
    scenario: &str,
    tr: &Transform,
    result: &IterationResult,
    forcing: &GridForcing,
    nu: f64,
    tol: f64,
) -> Result<CheckReport> {
    let r = pde_residual(tr, result, forcing, nu)?;
    let g = tr.grid();
    Ok(CheckReport::at_most("pde_residual", scenario, r.sup, 10.0 * tol)
        .with_measure("tol", tol)
        .with_grid("dim", g.dim)
        .with_grid("points_per_axis", g.points)
        .with_grid("half_width", g.half_width)
        .with_grid("time_nodes", result.times.len()))
}
