mod common;

use common::{deriv, rel};
use ns2d_modal::*;

#[test]
fn clocked_sampler_reduces_to_closed_form() {
    for f in common::presets().into_iter().step_by(4) {
        for &r in &[0.0, 0.8, 2.5, 7.0] {
            let (rm, rp) = ns_profiles_r1(&f, r, 10.0).unwrap();
            let c = ns_u1_clocked(&f, r, 10.0, 10.0, 2001).unwrap();
            let scale = rm.abs().max(rp.abs()).max(1e-300);
            assert!((c.minus - rm).abs() < 1e-10 * scale, "n={} r={r} {:e} {:e}", f.n, c.minus, rm);
            assert!((c.plus - rp).abs() < 1e-10 * scale, "n={} r={r}", f.n);
        }
    }
}

#[test]
fn first_iterate_is_divergence_free() {
    for f in common::presets() {
        let n = f.n as f64;
        // u_r = a e^{inφ}, u_φ = i b e^{inφ}
        let a = |r: f64| {
            let (m, p) = ns_profiles_r1(&f, r, 10.0).unwrap();
            0.5 * n * (m + p)
        };
        let b = |r: f64| {
            let (m, p) = ns_profiles_r1(&f, r, 10.0).unwrap();
            0.5 * n * (m - p)
        };
        let mut worst: f64 = 0.0;
        let mut grad: f64 = 0.0;
        for &r in &[0.3, 1.0, 2.0, 4.0, 9.0] {
            let div = deriv(|x| x * a(x), r, 1e-3) / r - n * b(r) / r;
            worst = worst.max(div.abs());
            grad = grad.max(deriv(a, r, 1e-3).abs()).max((a(r) / r).abs());
        }
        assert!(worst <= 1e-6 * grad, "n={} nu={}: {worst:e} vs {grad:e}", f.n, f.nu);
    }
}

/// Vorticity amplitude w with curl u = i w e^{inφ}, from the clocked sampler.
fn vorticity(f: &NsForcing, r: f64, t: f64, t_force: f64) -> f64 {
    let n = f.n as f64;
    let prof = |x: f64| {
        let c = ns_u1_clocked(f, x, t, t_force, 1201).unwrap();
        (0.5 * n * (c.minus + c.plus), 0.5 * n * (c.minus - c.plus))
    };
    let rb = deriv(|x| x * prof(x).1, r, 1e-3);
    (rb - n * prof(r).0) / r
}

#[test]
fn first_iterate_solves_the_linear_equation() {
    // ∂_t ω − νΔω = curl f at t = t_force, with the force frozen on that clock
    let t = 4.0;
    for f in common::presets().into_iter().step_by(2) {
        let n = f.n as f64;
        let w = |r: f64, s: f64| vorticity(&f, r, s, t);
        let mut worst: f64 = 0.0;
        let mut curl_f: f64 = 0.0;
        for &r in &[0.5, 1.0, 1.6, 2.5, 4.0] {
            let dt = (w(r, t + 1e-3) - w(r, t - 1e-3)) / 2e-3;
            let h = 1e-2;
            let (wm, w0, wp) = (w(r - h, t), w(r, t), w(r + h, t));
            let lap = (wp - 2.0 * w0 + wm) / (h * h) + (wp - wm) / (2.0 * h * r) - n * n * w0 / (r * r);
            let forcing = -n * f.force_profile(r) / r;
            worst = worst.max((dt - f.nu * lap - forcing).abs());
            curl_f = curl_f.max(forcing.abs());
        }
        assert!(worst <= 1e-4 * curl_f, "n={} nu={}: {worst:e} vs {curl_f:e}", f.n, f.nu);
    }
}

#[test]
fn closed_form_follows_the_moving_force_clock() {
    // sampling the closed form at a later t also moves the force weight,
    // so it differs from the frozen-clock field evaluated at that time
    let f = NsForcing::new(1, 1.0, 1.0, 1.0).unwrap();
    let moving = ns_profiles_r1(&f, 1.0, 6.0).unwrap().0;
    let frozen = ns_u1_clocked(&f, 1.0, 6.0, 5.0, 2001).unwrap().minus;
    assert!(rel(frozen, moving) > 1e-3);
}
