use crate::config::{Fixture, GridSettings};
use crate::output::{write_file, Table};
use crate::{RunData, RunError};
use spectral_grid::{fixtures, iterate, Grid, GridForcing, GridProblem, Transform};
use std::path::Path;
use std::time::Instant;
use verify::{check_fourier_divergence, check_grid_residual, CheckReport};

pub(crate) fn run_grid(name: &str, dim: usize, nu: f64, s: &GridSettings, dir: &Path) -> Result<RunData, RunError> {
    let mut data = RunData::default();
    let tr = Transform::new(Grid::new(dim, s.half_width, s.points)?);
    let (forcing, u0) = match s.fixture {
        Fixture::TaylorGreen => {
            let u0 = if dim == 2 { fixtures::taylor_green_2d(&tr) } else { fixtures::taylor_green_3d(&tr) };
            (GridForcing::Zero, Some(u0))
        }
        Fixture::SingleMode => {
            let a = s.amplitude.expect("validated");
            let f = if dim == 2 { fixtures::single_mode_2d(&tr, a) } else { fixtures::single_mode_3d(&tr, a) };
            (f, None)
        }
    };
    let problem = GridProblem {
        forcing: &forcing,
        u0: u0.clone(),
        nu,
        t_final: s.t_final,
        time_nodes: s.time_nodes,
        j_max: s.j_max,
        tol: s.tol,
        // periodic fixtures do not decay; the certificate is still recorded
        enforce_decay: false,
    };
    let started = Instant::now();
    let res = iterate(&tr, &problem)?;
    data.timings.insert("iteration_seconds".into(), started.elapsed().as_secs_f64());

    let mut trace = Table::new(&["step", "norm"]);
    for (j, v) in res.trace.iter().enumerate() {
        trace.row(&[j as f64, *v]);
    }
    data.files.push(write_file(dir, &format!("trace_{name}.csv"), &trace.into_bytes())?);

    let axes = ["x", "y", "z"];
    let comps = ["u_x", "u_y", "u_z"];
    let mut header: Vec<&str> = axes[..dim].to_vec();
    header.push("t");
    header.extend(&comps[..dim]);
    let mut field = Table::new(&header);
    let phys = res.final_field().to_physical(&tr);
    let g = tr.grid();
    for flat in 0..g.len() {
        let x = g.point(flat);
        let mut row: Vec<f64> = x[..dim].to_vec();
        row.push(s.t_final);
        row.extend((0..dim).map(|a| phys[a][flat]));
        field.row(&row);
    }
    data.files.push(write_file(dir, &format!("grid_{name}.csv"), &field.into_bytes())?);

    data.checks.push(CheckReport::new("converged", name, res.steps as f64, s.j_max as f64, res.converged));
    data.checks.push(check_fourier_divergence(name, &res.fields));
    data.checks.push(check_grid_residual(name, &tr, &res, &forcing, nu, s.tol)?);
    let increases = res.trace.windows(2).filter(|w| w[1] > w[0]).count();
    data.checks.push(CheckReport::new("trace_non_increasing", name, increases as f64, 0.0, res.trace_non_increasing()));
    if s.fixture == Fixture::TaylorGreen && dim == 2 {
        let u0 = u0.expect("taylor-green initial data");
        let want = u0.scale((-2.0 * nu * s.t_final).exp()).to_physical(&tr);
        let err = phys.iter().flatten().zip(want.iter().flatten()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        data.checks.push(CheckReport::at_most("exact_decay", name, err, 1e-4));
    }
    data.convergence_ratios.insert("trace_last_over_first".into(), res.trace.last().copied().unwrap_or(0.0) / res.trace[0].max(f64::MIN_POSITIVE));
    data.tail_verification.insert("spectral_tail".into(), res.resolved());
    data.tail_verification.insert("decay_certificate".into(), res.certificate.ok());
    Ok(data)
}
