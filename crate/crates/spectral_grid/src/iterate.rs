use crate::{
    apply_b, convective_term, pressure_from_force, s_kernel_series, DecayCertificate, GridError,
    GridForcing, Result, SpectralField, Transform,
};
use num_complex::Complex64;

pub struct GridProblem<'a> {
    pub forcing: &'a GridForcing,
    /// Initial velocity coefficients; `None` means u⁰ = 0.
    pub u0: Option<SpectralField>,
    pub nu: f64,
    pub t_final: f64,
    /// Nodes of the uniform time grid on [0, t_final], at least 5.
    pub time_nodes: usize,
    pub j_max: usize,
    pub tol: f64,
    /// Reject forcing that fails the decay certificate. Periodic fixtures
    /// switch this off.
    pub enforce_decay: bool,
}

impl GridProblem<'_> {
    pub fn times(&self) -> Vec<f64> {
        let h = self.t_final / (self.time_nodes - 1) as f64;
        (0..self.time_nodes).map(|k| k as f64 * h).collect()
    }
}

#[derive(Debug, Clone)]
pub struct IterationResult {
    pub times: Vec<f64>,
    /// Latest iterate u_j at every time node.
    pub fields: Vec<SpectralField>,
    /// First iterate u₁ at every time node.
    pub linear: Vec<SpectralField>,
    /// Pressure coefficients at the final time.
    pub pressure: Vec<Complex64>,
    /// ‖u₁‖ followed by ‖u_j − u_{j−1}‖, sup over space and time.
    pub trace: Vec<f64>,
    pub steps: usize,
    pub converged: bool,
    /// ∫|u|² dx at the final time.
    pub energy: f64,
    pub certificate: DecayCertificate,
    /// Worst spectral tail seen by the convective products.
    pub max_tail_ratio: f64,
}

impl IterationResult {
    pub fn trace_non_increasing(&self) -> bool {
        self.trace.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn resolved(&self) -> bool {
        self.max_tail_ratio <= crate::RESOLUTION_TAIL
    }

    pub fn final_field(&self) -> &SpectralField {
        self.fields.last().expect("at least one time node")
    }
}

fn series_sup(tr: &Transform, a: &[SpectralField], b: Option<&[SpectralField]>) -> f64 {
    a.iter()
        .enumerate()
        .map(|(k, f)| match b {
            Some(b) => f.sub(&b[k]).sup_norm(tr),
            None => f.sup_norm(tr),
        })
        .fold(0.0, f64::max)
}

/// u₁ at every node: B u⁰ + S̄ f.
pub(crate) fn first_iterate(
    forcing_coeffs: &[SpectralField],
    u0: Option<&SpectralField>,
    nu: f64,
    times: &[f64],
) -> Result<Vec<SpectralField>> {
    let mut u1 = s_kernel_series(forcing_coeffs, nu, times)?;
    if let Some(u0) = u0 {
        for (u, &t) in u1.iter_mut().zip(times) {
            *u = u.add(&apply_b(u0, nu, t)?);
        }
    }
    Ok(u1)
}

/// u_j = u₁ − S̄ (u_{j−1}·∇)u_{j−1} until the correction drops below `tol`.
pub fn iterate(tr: &Transform, problem: &GridProblem) -> Result<IterationResult> {
    let grid = *tr.grid();
    if !(problem.nu >= 0.0 && problem.nu.is_finite()) {
        return Err(GridError::Input(format!("nu must be >= 0, got {}", problem.nu)));
    }
    if !(problem.tol > 0.0) {
        return Err(GridError::Input(format!("tol must be positive, got {}", problem.tol)));
    }
    if !(problem.t_final > 0.0 && problem.t_final.is_finite()) || problem.time_nodes < 5 {
        return Err(GridError::Input("need t_final > 0 and at least 5 time nodes".into()));
    }
    if problem.j_max == 0 {
        return Err(GridError::Input("j_max must be at least 1".into()));
    }
    if let Some(u0) = &problem.u0 {
        if u0.grid != grid {
            return Err(GridError::Input("initial field lives on another grid".into()));
        }
    }
    let certificate = problem.forcing.certificate(tr);
    if problem.enforce_decay && !certificate.ok() {
        return Err(GridError::Decay {
            boundary: certificate.boundary_max,
            interior: certificate.interior_max,
        });
    }

    let times = problem.times();
    let f = problem.forcing.coefficients(tr, &times)?;
    let linear = first_iterate(&f, problem.u0.as_ref(), problem.nu, &times)?;
    let mut trace = vec![series_sup(tr, &linear, None)];
    let mut current = linear.clone();
    let mut converged = trace[0] < problem.tol;
    let mut steps = 1;
    let mut max_tail: f64 = 0.0;
    let mut growth = 0;

    while !converged && steps < problem.j_max {
        let mut conv = Vec::with_capacity(times.len());
        for u in &current {
            let c = convective_term(tr, u);
            max_tail = max_tail.max(c.tail_ratio);
            conv.push(c.field);
        }
        let correction = s_kernel_series(&conv, problem.nu, &times)?;
        let next: Vec<SpectralField> = linear.iter().zip(&correction).map(|(a, b)| a.sub(b)).collect();
        let norm = series_sup(tr, &next, Some(&current));
        growth = if norm > *trace.last().expect("nonempty") { growth + 1 } else { 0 };
        trace.push(norm);
        current = next;
        steps += 1;
        if growth >= 3 {
            return Err(GridError::Divergence { trace });
        }
        converged = norm < problem.tol;
    }

    let last = current.last().expect("time nodes");
    let conv_last = convective_term(tr, last);
    max_tail = max_tail.max(conv_last.tail_ratio);
    let pressure = pressure_from_force(&f[f.len() - 1].sub(&conv_last.field));
    let energy = last.energy();
    Ok(IterationResult {
        times,
        fields: current,
        linear,
        pressure,
        trace,
        steps,
        converged,
        energy,
        certificate,
        max_tail_ratio: max_tail,
    })
}
