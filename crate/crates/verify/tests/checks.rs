use ns2d_modal::{ns_u1, ns_u1_clocked, NsForcing};
use proptest::prelude::*;
use verify::{
    check_convergence_ratio, check_divergence, check_initial_zero, check_residual, modal_cartesian, polar_points,
    CheckReport, Model, ResidualInput, VerifyError,
};

fn taylor_green(nu: f64) -> impl Fn(f64, f64, f64) -> [f64; 2] {
    move |x: f64, y: f64, t: f64| {
        let d = (-2.0 * nu * t).exp();
        [d * x.sin() * y.cos(), -d * x.cos() * y.sin()]
    }
}

fn zero_force(_: f64, _: f64, _: f64) -> [f64; 2] {
    [0.0, 0.0]
}

#[test]
fn divergence_of_a_compressive_field_is_order_one() {
    let pts = polar_points((0.5, 2.0, 4), (0.0, 3.0, 4));
    let rep = check_divergence("compressive", &|x, _y| [x, 0.0], &pts, 1e-3);
    assert!((rep.value() - 1.0).abs() < 1e-12);
    assert!(!rep.pass);
}

#[test]
fn divergence_of_zero_field_is_zero() {
    let pts = polar_points((0.0, 1.0, 3), (0.0, 1.0, 3));
    let rep = check_divergence("zero", &|_, _| [0.0, 0.0], &pts, 1e-3);
    assert_eq!(rep.value(), 0.0);
    assert!(rep.pass);
}

#[test]
fn modal_first_iterate_is_solenoidal() {
    let f = NsForcing::new(2, 0.5, 1.0, 1.0).unwrap();
    let u = |x: f64, y: f64| modal_cartesian(&ns_u1(&f, x.hypot(y), y.atan2(x), 1.0).unwrap());
    let pts = polar_points((0.3, 4.0, 8), (0.1, 6.0, 7));
    let rep = check_divergence("ns n=2", &u, &pts, 1e-4);
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn inviscid_first_iterate_is_solenoidal() {
    let f = euler2d_modal::EulerForcing::new(1, 1.0, 1.0, 10.0).unwrap();
    let u = |x: f64, y: f64| modal_cartesian(&euler2d_modal::euler_u1(&f, x.hypot(y), y.atan2(x), 2.0).unwrap());
    let pts = polar_points((0.5, 6.0, 8), (0.1, 6.0, 7));
    let rep = check_divergence("euler n=1", &u, &pts, 1e-4);
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn taylor_green_satisfies_full_equations_with_pressure() {
    let nu = 0.3;
    let u = taylor_green(nu);
    let p = move |x: f64, y: f64, t: f64| 0.25 * (-4.0 * nu * t).exp() * ((2.0 * x).cos() + (2.0 * y).cos());
    let pts = polar_points((0.2, 2.5, 5), (0.0, 6.0, 6));
    let times = [0.3, 1.0];
    let input = ResidualInput {
        model: Model::Ns { nu },
        u: &u,
        p: Some(&p),
        f: &zero_force,
        convection: true,
        points: &pts,
        times: &times,
        threshold: 1e-4,
    };
    let rep = check_residual("tg", &input);
    assert!(rep.pass, "{rep:?}");
    assert_eq!(rep.check, "residual");
}

#[test]
fn curl_form_removes_the_pressure_and_detects_wrong_viscosity() {
    let u = taylor_green(0.3);
    let pts = polar_points((0.2, 2.5, 5), (0.0, 6.0, 6));
    let times = [0.5];
    let mut input = ResidualInput {
        model: Model::Ns { nu: 0.3 },
        u: &u,
        p: None,
        f: &zero_force,
        convection: true,
        points: &pts,
        times: &times,
        threshold: 1e-4,
    };
    assert!(check_residual("tg", &input).pass);
    input.model = Model::Ns { nu: 0.5 };
    let bad = check_residual("tg", &input);
    assert!(!bad.pass);
    assert!(bad.value() > 0.1);
}

#[test]
fn frozen_clock_first_iterate_solves_the_linear_system() {
    let f = NsForcing::new(1, 1.0, 1.0, 1.0).unwrap();
    let clock = 1.2;
    let u = move |x: f64, y: f64, t: f64| {
        ns_u1_clocked(&f, x.hypot(y), t, clock, 801).unwrap().sample(f.n, y.atan2(x)).real_cartesian()
    };
    let force = move |x: f64, y: f64, t: f64| {
        let (r, phi) = (x.hypot(y), y.atan2(x));
        let fr = f.force_profile(r) * f.time_weight(clock, t) * phi.cos();
        [fr * phi.cos(), fr * phi.sin()]
    };
    let pts = polar_points((0.4, 2.4, 3), (0.3, 2.5, 3));
    let times = [0.8];
    let input = ResidualInput {
        model: Model::Ns { nu: 1.0 },
        u: &u,
        p: None,
        f: &force,
        convection: false,
        points: &pts,
        times: &times,
        threshold: 1e-4,
    };
    let rep = check_residual("ns clocked", &input);
    assert!(rep.pass, "{rep:?}");
}

trait RealCartesian {
    fn real_cartesian(&self) -> [f64; 2];
}

impl RealCartesian for euler2d_modal::ModalSample {
    fn real_cartesian(&self) -> [f64; 2] {
        modal_cartesian(self)
    }
}

#[test]
fn convergence_ratio_needs_a_nonzero_first_iterate() {
    assert_eq!(
        check_convergence_ratio("z", &[0.0, 0.0], &[1.0, 2.0], true),
        Err(VerifyError::UndefinedRatio)
    );
    let rep = check_convergence_ratio("s", &[1.0, 4.0], &[0.5, 1.0], true).unwrap();
    assert_eq!(rep.value(), 0.25);
    assert!(rep.pass);
    let rep = check_convergence_ratio("s", &[1.0], &[1.0], false).unwrap();
    assert!(!rep.pass);
    assert!(matches!(check_convergence_ratio("s", &[1.0], &[], true), Err(VerifyError::Input(_))));
}

#[test]
fn initial_zero_is_exact() {
    assert!(check_initial_zero("a", &[0.0, -0.0]).pass);
    assert!(!check_initial_zero("a", &[0.0, 1e-300]).pass);
}

#[test]
fn reports_round_trip_through_json() {
    let rep = CheckReport::at_most("x", "s", 0.5, 1.0).with_measure("extra", 2.0).with_grid("m", 64);
    let text = serde_json::to_string(&rep).unwrap();
    let back: CheckReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
}

proptest! {
    #[test]
    fn stream_function_fields_pass_divergence(a in -2.0f64..2.0, kx in -3.0f64..3.0, ky in -3.0f64..3.0, c in -1.0f64..1.0) {
        // u = (∂ψ/∂y, −∂ψ/∂x) for ψ = a sin(kx x + ky y) + c x y
        let u = move |x: f64, y: f64| {
            let g = a * (kx * x + ky * y).cos();
            [g * ky + c * x, -g * kx - c * y]
        };
        let pts = polar_points((0.0, 2.0, 4), (0.0, 6.0, 5));
        let rep = check_divergence("stream", &u, &pts, 1e-4);
        prop_assert!(rep.pass, "{}", rep.value());
    }
}
