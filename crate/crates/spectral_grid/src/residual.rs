use crate::iterate::first_iterate;
use crate::{
    convective_term, leray_project, s_kernel_series, GridForcing, IterationResult, Result,
    SpectralField, Transform,
};
use serde::{Deserialize, Serialize};

/// Sup-norm residual at interior time nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub nodes: Vec<usize>,
    pub values: Vec<f64>,
    pub sup: f64,
}

/// Residual of ∂_t u − νΔu + (u·∇)u + ∇p − f on the latest iterate, with
/// five-point differences in time and spectral derivatives in space. The
/// pressure is the one that makes the right-hand side solenoidal, so the
/// residual reduces to ∂_t U + ν|γ|²U − P(F − (u·∇)u). The force is taken
/// mean-corrected, as in the solver.
pub fn pde_residual(
    tr: &Transform,
    result: &IterationResult,
    forcing: &GridForcing,
    nu: f64,
) -> Result<ResidualReport> {
    let grid = *tr.grid();
    let times = &result.times;
    let f = forcing.coefficients(tr, times)?;
    let h = times[1] - times[0];
    let u = &result.fields;
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for k in 2..times.len() - 2 {
        let conv = convective_term(tr, &u[k]).field;
        let rhs = leray_project(&f[k].sub(&conv));
        let mut r = SpectralField::zeros(grid);
        for flat in 0..grid.len() {
            let g = grid.gamma(flat);
            let a = nu * g[..grid.dim].iter().map(|x| x * x).sum::<f64>();
            for c in 0..grid.dim {
                let dt = (u[k - 2].comps[c][flat] - u[k - 1].comps[c][flat] * 8.0
                    + u[k + 1].comps[c][flat] * 8.0
                    - u[k + 2].comps[c][flat])
                    / (12.0 * h);
                r.comps[c][flat] = dt + u[k].comps[c][flat] * a - rhs.comps[c][flat];
            }
        }
        nodes.push(k);
        values.push(r.sup_norm(tr));
    }
    let sup = values.iter().cloned().fold(0.0, f64::max);
    Ok(ResidualReport { nodes, values, sup })
}

/// Sup over all time nodes of |u − (u₁ − S̄(u·∇)u)|: how well the latest
/// iterate satisfies the integral form of the system.
pub fn mild_residual(
    tr: &Transform,
    result: &IterationResult,
    forcing: &GridForcing,
    u0: Option<&SpectralField>,
    nu: f64,
) -> Result<f64> {
    let f = forcing.coefficients(tr, &result.times)?;
    let u1 = first_iterate(&f, u0, nu, &result.times)?;
    let conv: Vec<SpectralField> = result.fields.iter().map(|u| convective_term(tr, u).field).collect();
    let corr = s_kernel_series(&conv, nu, &result.times)?;
    Ok(result
        .fields
        .iter()
        .zip(u1.iter().zip(&corr))
        .map(|(u, (a, b))| u.sub(&a.sub(b)).sup_norm(tr))
        .fold(0.0, f64::max))
}
