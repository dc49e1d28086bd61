use crate::{GridError, Result, SpectralField};
use num_complex::Complex64;
use quadrature::SimpsonRule;

/// Applies the printed numerators (|γ|²δ_ij − γ_iγ_j)F_j / |γ|² mode by mode.
pub fn leray_project(f: &SpectralField) -> SpectralField {
    let grid = f.grid;
    let mut out = SpectralField::zeros(grid);
    for flat in 1..grid.len() {
        let g = grid.gamma(flat);
        let g2: f64 = g[..grid.dim].iter().map(|x| x * x).sum();
        if grid.dim == 2 {
            let (f1, f2) = (f.comps[0][flat], f.comps[1][flat]);
            out.comps[0][flat] = (f1 * (g[1] * g[1]) - f2 * (g[0] * g[1])) / g2;
            out.comps[1][flat] = (f2 * (g[0] * g[0]) - f1 * (g[0] * g[1])) / g2;
        } else {
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                let num = f.comps[i][flat] * (g[j] * g[j] + g[k] * g[k])
                    - f.comps[j][flat] * (g[i] * g[j])
                    - f.comps[k][flat] * (g[i] * g[k]);
                out.comps[i][flat] = num / g2;
            }
        }
    }
    out
}

/// Cumulative quadrature weights on a uniform grid with step h: row k
/// integrates over [0, t_k]. Even k use Simpson, odd k ≥ 3 finish with the
/// three-eighths rule, k = 1 is the trapezoid. `s_kernel_series` replaces
/// row 1 by exact exponential weights.
pub fn cumulative_weights(nodes: usize, h: f64) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let mut w = vec![0.0; k + 1];
        let simpson_end = if k % 2 == 0 { k } else if k >= 3 { k - 3 } else { 0 };
        for i in 0..simpson_end {
            // panel [i, i+2] for even i
            if i % 2 == 0 {
                w[i] += h / 3.0;
                w[i + 1] += 4.0 * h / 3.0;
                w[i + 2] += h / 3.0;
            }
        }
        if k == 1 {
            w[0] += 0.5 * h;
            w[1] += 0.5 * h;
        } else if k % 2 == 1 {
            let s = simpson_end;
            for (o, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
                w[s + o] += 3.0 * h / 8.0 * c;
            }
        }
        rows.push(w);
    }
    rows
}

fn check_times(samples: &[SpectralField], times: &[f64]) -> Result<f64> {
    if samples.len() != times.len() || times.len() < 2 {
        return Err(GridError::Input(format!(
            "{} samples for {} times (need at least 2)",
            samples.len(),
            times.len()
        )));
    }
    if times[0] != 0.0 {
        return Err(GridError::Input("time grid must start at 0".into()));
    }
    let h = times[1];
    for (k, &t) in times.iter().enumerate() {
        if (t - k as f64 * h).abs() > 1e-12 * times[times.len() - 1].abs().max(1.0) {
            return Err(GridError::Input("time grid must be uniform".into()));
        }
    }
    let grid = samples[0].grid;
    if samples.iter().any(|s| s.grid != grid) {
        return Err(GridError::Input("samples live on different grids".into()));
    }
    Ok(h)
}

/// I_p = ∫_0^1 u^p e^{−zu} du for p = 0, 1, 2.
fn exponential_moments(z: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    if z < 2.0 {
        for (p, o) in out.iter_mut().enumerate() {
            let mut term = 1.0; // (−z)^j / j!
            for j in 0..40 {
                *o += term / (p + j + 1) as f64;
                term *= -z / (j + 1) as f64;
            }
        }
    } else {
        let e = (-z).exp();
        out[0] = (1.0 - e) / z;
        for p in 1..3 {
            out[p] = (p as f64 * out[p - 1] - e) / z;
        }
    }
    out
}

/// Weights of F(0), F(h), F(2h) (divided by h) for ∫_0^h e^{−a(h−τ)} F(τ) dτ
/// with F replaced by its quadratic interpolant, z = ah.
fn first_step_weights(z: f64) -> [f64; 3] {
    let i = exponential_moments(z);
    // M_p = ∫_0^1 σ^p e^{−z(1−σ)} dσ
    let m0 = i[0];
    let m1 = i[0] - i[1];
    let m2 = i[0] - 2.0 * i[1] + i[2];
    [
        0.5 * (m2 - 3.0 * m1 + 2.0 * m0),
        2.0 * m1 - m2,
        0.5 * (m2 - m1),
    ]
}

/// S̄ applied at every node of a uniform time grid:
/// U(t_k) = ∫_0^{t_k} e^{−ν|γ|²(t_k−τ)} P F(τ) dτ with cumulative weights.
/// The first step, where no Simpson panel fits, integrates the exponential
/// exactly against quadratic interpolation of F through the first three
/// nodes (linear when only two exist).
pub fn s_kernel_series(samples: &[SpectralField], nu: f64, times: &[f64]) -> Result<Vec<SpectralField>> {
    let h = check_times(samples, times)?;
    let grid = samples[0].grid;
    let projected: Vec<SpectralField> = samples.iter().map(leray_project).collect();
    let weights = cumulative_weights(times.len(), h);
    let nt = times.len();
    let mut out = vec![SpectralField::zeros(grid); nt];
    let mut decay = vec![0.0; nt];
    let mut column = vec![Complex64::new(0.0, 0.0); nt];
    for flat in 1..grid.len() {
        let g = grid.gamma(flat);
        let a = nu * g[..grid.dim].iter().map(|x| x * x).sum::<f64>();
        for (j, d) in decay.iter_mut().enumerate() {
            *d = (-a * h * j as f64).exp();
        }
        for c in 0..grid.dim {
            for (m, v) in column.iter_mut().enumerate() {
                *v = projected[m].comps[c][flat];
            }
            out[1].comps[c][flat] = if nt > 2 {
                let w = first_step_weights(a * h);
                (column[0] * w[0] + column[1] * w[1] + column[2] * w[2]) * h
            } else {
                let w = first_step_weights(a * h);
                // linear interpolant: fold the quadratic node back onto the first two
                (column[0] * (w[0] - w[2]) + column[1] * (w[1] + 2.0 * w[2])) * h
            };
            for k in 2..nt {
                let mut acc = Complex64::new(0.0, 0.0);
                for (m, w) in weights[k].iter().enumerate() {
                    acc += column[m] * (w * decay[k - m]);
                }
                out[k].comps[c][flat] = acc;
            }
        }
    }
    Ok(out)
}

/// S̄ at the final time t only, with composite Simpson over samples on a
/// uniform grid of [0, t] (odd count).
pub fn apply_s_kernel(samples: &[SpectralField], nu: f64, t: f64) -> Result<SpectralField> {
    let rule = SimpsonRule::new(0.0, t, samples.len())?;
    let grid = samples
        .first()
        .map(|s| s.grid)
        .ok_or_else(|| GridError::Input("no samples".into()))?;
    let mut out = SpectralField::zeros(grid);
    for (s, (&tau, &w)) in samples.iter().zip(rule.nodes.iter().zip(&rule.weights)) {
        let p = leray_project(s);
        for flat in 1..grid.len() {
            let g = grid.gamma(flat);
            let a = nu * g[..grid.dim].iter().map(|x| x * x).sum::<f64>();
            let f = w * (-a * (t - tau)).exp();
            for c in 0..grid.dim {
                out.comps[c][flat] += p.comps[c][flat] * f;
            }
        }
    }
    Ok(out)
}

pub fn apply_s_kernel_2d(samples: &[SpectralField], nu: f64, t: f64) -> Result<SpectralField> {
    if samples.first().map(|s| s.grid.dim) != Some(2) {
        return Err(GridError::Input("2D kernel needs 2D samples".into()));
    }
    apply_s_kernel(samples, nu, t)
}

pub fn apply_s_kernel_3d(samples: &[SpectralField], nu: f64, t: f64) -> Result<SpectralField> {
    if samples.first().map(|s| s.grid.dim) != Some(3) {
        return Err(GridError::Input("3D kernel needs 3D samples".into()));
    }
    apply_s_kernel(samples, nu, t)
}

/// Divergence tolerance for initial data.
const U0_DIVERGENCE_TOL: f64 = 1e-8;

/// Initial-value propagator U⁰(γ) e^{−ν|γ|²t}.
pub fn apply_b(u0: &SpectralField, nu: f64, t: f64) -> Result<SpectralField> {
    let ratio = u0.divergence_ratio();
    if ratio > U0_DIVERGENCE_TOL {
        return Err(GridError::Input(format!(
            "initial velocity is not divergence-free (ratio {ratio:e})"
        )));
    }
    if !(nu >= 0.0 && t >= 0.0) {
        return Err(GridError::Input(format!("need nu >= 0 and t >= 0, got nu={nu}, t={t}")));
    }
    let grid = u0.grid;
    let mut out = u0.clone();
    if t == 0.0 || nu == 0.0 {
        return Ok(out);
    }
    for flat in 0..grid.len() {
        let g = grid.gamma(flat);
        let f = (-nu * g[..grid.dim].iter().map(|x| x * x).sum::<f64>() * t).exp();
        for c in 0..grid.dim {
            out.comps[c][flat] *= f;
        }
    }
    Ok(out)
}

/// Pressure coefficients with ∇P equal to the gradient part of F:
/// P = −i(γ·F)/|γ|² in the e^{−iγ·x} transform convention, zero mean.
pub fn pressure_from_force(f: &SpectralField) -> Vec<Complex64> {
    let grid = f.grid;
    let mut p = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (flat, out) in p.iter_mut().enumerate().skip(1) {
        let g = grid.gamma(flat);
        let mut dot = Complex64::new(0.0, 0.0);
        let mut g2 = 0.0;
        for a in 0..grid.dim {
            dot += f.comps[a][flat] * g[a];
            g2 += g[a] * g[a];
        }
        *out = Complex64::new(0.0, -1.0) * dot / g2;
    }
    p
}

/// S̄ at time t for a separable force F(x) g(τ): the projection is applied
/// once and each mode carries the scalar ∫_0^t e^{−ν|γ|²(t−τ)} g(τ) dτ,
/// by composite Simpson with `nodes` points.
pub fn apply_s_kernel_separable(
    spatial: &SpectralField,
    weight: impl Fn(f64) -> f64,
    nu: f64,
    t: f64,
    nodes: usize,
) -> Result<SpectralField> {
    let rule = SimpsonRule::new(0.0, t, nodes)?;
    let g: Vec<f64> = rule.nodes.iter().map(|&tau| weight(tau)).collect();
    let grid = spatial.grid;
    let mut out = leray_project(spatial);
    for flat in 0..grid.len() {
        let gm = grid.gamma(flat);
        let a = nu * gm[..grid.dim].iter().map(|x| x * x).sum::<f64>();
        let mut factor = 0.0;
        for ((&tau, &w), gv) in rule.nodes.iter().zip(&rule.weights).zip(&g) {
            factor += w * gv * (-a * (t - tau)).exp();
        }
        for c in 0..grid.dim {
            out.comps[c][flat] *= factor;
        }
    }
    Ok(out)
}
