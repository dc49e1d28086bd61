use spectral_grid::*;
use std::f64::consts::PI;

fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn problem<'a>(forcing: &'a GridForcing, u0: Option<SpectralField>, nu: f64, t: f64, nodes: usize, tol: f64) -> GridProblem<'a> {
    GridProblem {
        forcing,
        u0,
        nu,
        t_final: t,
        time_nodes: nodes,
        j_max: 30,
        tol,
        enforce_decay: false,
    }
}

#[test]
fn zero_data_gives_zero_solution_in_one_step() {
    let tr = Transform::new(Grid::new(2, PI, 16).unwrap());
    let zero = GridForcing::Zero;
    let res = iterate(&tr, &problem(&zero, None, 1.0, 1.0, 9, 1e-10)).unwrap();
    assert_eq!(res.steps, 1);
    assert!(res.converged);
    assert_eq!(res.final_field().sup_norm(&tr), 0.0);
}

#[test]
fn taylor_green_decays_at_the_exact_rate() {
    let tr = Transform::new(Grid::new(2, PI, 128).unwrap());
    let u0 = fixtures::taylor_green_2d(&tr);
    let zero = GridForcing::Zero;
    let (nu, t) = (0.1, 0.5);
    let res = iterate(&tr, &problem(&zero, Some(u0.clone()), nu, t, 11, 1e-10)).unwrap();
    assert!(res.converged, "{:?}", res.trace);
    let want = u0.scale((-2.0 * nu * t).exp()).to_physical(&tr);
    let err = max_abs_diff(&res.final_field().to_physical(&tr), &want);
    assert!(err < 1e-4, "{err:e}");
    // the initial condition is reproduced at t = 0
    let err0 = max_abs_diff(&res.fields[0].to_physical(&tr), &u0.to_physical(&tr));
    assert!(err0 <= 1e-10);
    assert!(res.final_field().divergence_ratio() <= 1e-10);
}

#[test]
fn single_mode_2d_fixed_point() {
    let tr = Transform::new(Grid::new(2, PI, 16).unwrap());
    let f = fixtures::single_mode_2d(&tr, 0.2);
    let nu = 1.0;
    let res = iterate(&tr, &problem(&f, None, nu, 1.0, 41, 1e-10)).unwrap();
    assert!(res.converged);
    let mild = mild_residual(&tr, &res, &f, None, nu).unwrap();
    assert!(mild < 1e-10, "{mild:e}");
    // the convective term is a gradient, so u = u₁ = A(1 − e^{−t})(sin y, sin x)
    let c = 0.2 * (1.0 - (-1.0f64).exp());
    let want = SpectralField::sample(&tr, |x| [c * x[1].sin(), c * x[0].sin(), 0.0]);
    assert!(max_abs_diff(&res.final_field().to_physical(&tr), &want.to_physical(&tr)) < 1e-8);
}

#[test]
fn single_mode_3d_run_satisfies_the_equations() {
    let tr = Transform::new(Grid::new(3, PI, 16).unwrap());
    let f = fixtures::single_mode_3d(&tr, 0.5);
    let (nu, tol) = (1.0, 1e-8);
    let res = iterate(&tr, &problem(&f, None, nu, 1.0, 81, tol)).unwrap();
    assert!(res.converged, "{:?}", res.trace);
    assert!(res.steps > 2, "the nonlinear term must contribute");
    assert!(res.trace_non_increasing(), "{:?}", res.trace);
    for u in &res.fields {
        assert!(u.divergence_ratio() <= 1e-10);
        assert!(u.conjugate_symmetry_error() < 1e-12);
    }
    let r = pde_residual(&tr, &res, &f, nu).unwrap();
    assert!(r.sup <= 10.0 * tol, "{r:?}");
    let mild = mild_residual(&tr, &res, &f, None, nu).unwrap();
    assert!(mild <= 10.0 * tol, "{mild:e}");
    assert!(res.energy.is_finite() && res.energy > 0.0);
    assert!(res.resolved());
    assert_eq!(res.fields[0].sup_norm(&tr), 0.0);
}

#[test]
fn taylor_green_3d_runs_and_stays_solenoidal() {
    let tr = Transform::new(Grid::new(3, PI, 16).unwrap());
    let zero = GridForcing::Zero;
    let u0 = fixtures::taylor_green_3d(&tr);
    let res = iterate(&tr, &problem(&zero, Some(u0), 0.5, 0.5, 21, 1e-9)).unwrap();
    assert!(res.converged, "{:?}", res.trace);
    assert!(res.trace_non_increasing());
    assert!(res.final_field().divergence_ratio() <= 1e-10);
}

#[test]
fn strong_forcing_is_reported_as_divergent() {
    let tr3 = Transform::new(Grid::new(3, PI, 8).unwrap());
    let f = fixtures::single_mode_3d(&tr3, 40.0);
    let p = GridProblem { j_max: 40, ..problem(&f, None, 0.05, 4.0, 21, 1e-12) };
    match iterate(&tr3, &p) {
        Err(GridError::Divergence { trace }) => assert!(trace.len() >= 4),
        other => panic!("expected divergence, got {:?}", other.map(|r| r.trace)),
    }
}

#[test]
fn decay_certificate_is_enforced_on_request() {
    let tr = Transform::new(Grid::new(2, PI, 16).unwrap());
    let f = fixtures::single_mode_2d(&tr, 0.1);
    let p = GridProblem { enforce_decay: true, ..problem(&f, None, 1.0, 1.0, 9, 1e-8) };
    assert!(matches!(iterate(&tr, &p), Err(GridError::Decay { .. })));
    let bad = GridProblem { tol: 0.0, ..problem(&f, None, 1.0, 1.0, 9, 1e-8) };
    assert!(matches!(iterate(&tr, &bad), Err(GridError::Input(_))));
}
