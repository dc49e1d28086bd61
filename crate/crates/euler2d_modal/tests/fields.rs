mod common;

use common::{divergence, presets};
use euler2d_modal::{euler_u1, euler_u2, euler_u2star, EulerForcing, ModalSample};
use num_complex::Complex64;
use std::f64::consts::PI;

fn phis(count: usize) -> Vec<f64> {
    (0..count).map(|k| PI * k as f64 / (count - 1) as f64).collect()
}

fn radii() -> Vec<f64> {
    (0..=100).map(|k| 0.5 * k as f64).collect()
}

#[test]
fn initial_condition_is_exactly_zero() {
    for e in presets() {
        for &r in &radii() {
            for &phi in &phis(37) {
                assert_eq!(euler_u1(&e, r, phi, 0.0).unwrap(), ModalSample::zero());
                let s = euler_u2star(&e, r, phi, 0.0).unwrap();
                assert_eq!(s.magnitude(), 0.0);
                assert_eq!(euler_u2(&e, r, phi, 0.0).unwrap().magnitude(), 0.0);
            }
        }
    }
}

#[test]
fn origin_limit_of_the_first_iterate() {
    let e = EulerForcing::new(1, 1.0, 1.0, 10.0).unwrap();
    let u = euler_u1(&e, 0.0, 0.0, 10.0).unwrap();
    assert!((u.ur.re - 0.5 * e.u1_time(10.0)).abs() < 1e-16);
    let near = euler_u1(&e, 1e-6, 0.0, 10.0).unwrap();
    assert!((near.ur - u.ur).norm() < 1e-6);
}

#[test]
fn second_iterate_plus_correction_is_the_first_iterate() {
    for e in presets() {
        for &r in &[0.0, 0.7, 3.0, 20.0] {
            for &phi in &[0.0, 1.0, 2.5] {
                let u1 = euler_u1(&e, r, phi, 4.0).unwrap();
                let u2 = euler_u2(&e, r, phi, 4.0).unwrap();
                let us = euler_u2star(&e, r, phi, 4.0).unwrap();
                let back = u2.add(&us);
                assert!((back.u1 - u1.u1).norm() <= 1e-16 * (1.0 + u1.magnitude()));
                assert!((back.u2 - u1.u2).norm() <= 1e-16 * (1.0 + u1.magnitude()));
            }
        }
    }
}

/// Velocity of the first iterate from the free-space Green's function:
/// u₁ = u₁t (f − ∇Δ⁻¹ div f), with ∇Δ⁻¹ g (x) = (1/2π) ∫∫ (−e_θ) g(x + s e_θ) dθ ds.
fn brute_force_u1(e: &EulerForcing, x: f64, y: f64, t: f64) -> (Complex64, Complex64) {
    let n = e.n as i32;
    let div_f = |px: f64, py: f64| {
        let rho = px.hypot(py);
        Complex64::new(px, py).powi(n) * (e.amplitude * (n as f64 + 2.0 - e.mu * rho) * (-e.mu * rho).exp())
    };
    let n_theta = 512;
    let s_max = 60.0;
    let n_s = 12000;
    let hs = s_max / n_s as f64;
    let mut gx = Complex64::new(0.0, 0.0);
    let mut gy = Complex64::new(0.0, 0.0);
    for j in 0..n_theta {
        let th = 2.0 * PI * j as f64 / n_theta as f64;
        let (st, ct) = th.sin_cos();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=n_s {
            let w = if i == 0 || i == n_s { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            let s = i as f64 * hs;
            acc += div_f(x + s * ct, y + s * st) * w;
        }
        acc *= hs / 3.0;
        gx -= acc * ct;
        gy -= acc * st;
    }
    let scale = 1.0 / n_theta as f64; // (1/2π)·(2π/N)
    gx *= scale;
    gy *= scale;
    let r = x.hypot(y);
    let phi = y.atan2(x);
    let (fr, _) = e.force(r, phi, 0.0);
    let (sp, cp) = phi.sin_cos();
    let tt = e.u1_time(t);
    ((fr * cp - gx) * tt, (fr * sp - gy) * tt)
}

#[test]
fn first_iterate_matches_a_brute_force_double_integral() {
    let e = EulerForcing::new(1, 1.0, 1.0, 10.0).unwrap();
    let u = euler_u1(&e, 2.0, 0.0, 10.0).unwrap();
    let (bx, by) = brute_force_u1(&e, 2.0, 0.0, 10.0);
    let scale = u.magnitude();
    assert!((u.u1 - bx).norm() < 1e-6 * scale, "{} vs {}", u.u1, bx);
    assert!((u.u2 - by).norm() < 1e-6 * scale, "{} vs {}", u.u2, by);
}

#[test]
fn first_iterate_matches_brute_force_off_axis_for_mode_two() {
    let e = EulerForcing::new(2, 0.5, 1.3, 10.0).unwrap();
    let (x, y) = (1.1f64, 0.8f64);
    let u = euler_u1(&e, x.hypot(y), y.atan2(x), 3.0).unwrap();
    let (bx, by) = brute_force_u1(&e, x, y, 3.0);
    let scale = u.magnitude();
    assert!((u.u1 - bx).norm() < 1e-6 * scale, "{} vs {}", u.u1, bx);
    assert!((u.u2 - by).norm() < 1e-6 * scale, "{} vs {}", u.u2, by);
}

#[test]
fn fields_are_divergence_free() {
    let t = 10.0;
    for e in presets() {
        let u1 = |r: f64, phi: f64| euler_u1(&e, r, phi, t).unwrap();
        let us = |r: f64, phi: f64| euler_u2star(&e, r, phi, t).unwrap();
        for &r in &[0.5f64, 1.0, 2.0, 4.0, 8.0, 14.0, 20.0] {
            for &phi in &[0.1f64, 0.9, 2.0, 3.0] {
                let (x, y) = (r * phi.cos(), r * phi.sin());
                for field in [&u1 as &dyn Fn(f64, f64) -> ModalSample, &us] {
                    let (div, grad) = divergence(field, x, y, 1e-4);
                    assert!(div <= 1e-6 * grad, "n={} r={r} phi={phi}: div {div:e} grad {grad:e}", e.n);
                }
            }
        }
    }
}

/// Without viscosity the first iterate solves ∂u/∂t = f − ∇p, so the curl
/// of ∂u₁/∂t − f₁ must vanish.
#[test]
fn linear_residual_is_curl_free() {
    for e in presets() {
        let t = 0.07;
        let dt = 1e-4;
        let residual = |x: f64, y: f64| {
            let r = x.hypot(y);
            let phi = y.atan2(x);
            let up = euler_u1(&e, r, phi, t + dt).unwrap();
            let um = euler_u1(&e, r, phi, t - dt).unwrap();
            let (fr, _) = e.force(r, phi, t);
            let (s, c) = phi.sin_cos();
            ((up.u1 - um.u1) / (2.0 * dt) - fr * c, (up.u2 - um.u2) / (2.0 * dt) - fr * s)
        };
        let h = 1e-3;
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for &r in &[0.7f64, 1.5, 3.0, 6.0] {
            for &phi in &[0.3f64, 1.7, 2.9] {
                let (x, y) = (r * phi.cos(), r * phi.sin());
                let curl = (residual(x + h, y).1 - residual(x - h, y).1) / (2.0 * h)
                    - (residual(x, y + h).0 - residual(x, y - h).0) / (2.0 * h);
                let f = |x: f64, y: f64| {
                    let (fr, _) = e.force(x.hypot(y), y.atan2(x), t);
                    let phi = y.atan2(x);
                    (fr * phi.cos(), fr * phi.sin())
                };
                let curl_f = (f(x + h, y).1 - f(x - h, y).1) / (2.0 * h)
                    - (f(x, y + h).0 - f(x, y - h).0) / (2.0 * h);
                worst = worst.max(curl.norm());
                scale = scale.max(curl_f.norm());
            }
        }
        assert!(worst <= 1e-5 * scale, "n={}: {worst:e} vs {scale:e}", e.n);
    }
}

fn sup_real(f: impl Fn(f64, f64) -> ModalSample) -> f64 {
    let mut best: f64 = 0.0;
    for &r in &radii() {
        for &phi in &phis(37) {
            best = best.max(f(r, phi).real_magnitude());
        }
    }
    best
}

#[test]
fn correction_is_dominated_by_the_first_iterate() {
    for e in presets() {
        for &t in &[1.0, 5.0, 10.0] {
            let s1 = sup_real(|r, p| euler_u1(&e, r, p, t).unwrap());
            let s2 = sup_real(|r, p| euler_u2star(&e, r, p, t).unwrap());
            assert!(s2 < s1, "n={} t={t}: {s2} vs {s1}", e.n);
        }
    }
}

/// The plus profile decays only like r^{−(n+1)}, so the grid-edge bound
/// |u₁(50)| ≤ 1e-3 sup|u₁| holds for some modes and fails for others.
/// The outcome per mode is pinned here.
#[test]
fn grid_edge_decay_by_mode() {
    let t = 10.0;
    let mut holds = Vec::new();
    for e in presets() {
        let sup = sup_real(|r, p| euler_u1(&e, r, p, t).unwrap());
        let edge = phis(37)
            .iter()
            .map(|&p| euler_u1(&e, 50.0, p, t).unwrap().real_magnitude())
            .fold(0.0, f64::max);
        holds.push(edge <= 1e-3 * sup);
        // the algebraic tail itself: (n/2) R₊(50) with R₊ → F (2n+1)!/(μ^{2n+2} r^{n+1})
        let (_, rp) = e.profiles(50.0).unwrap();
        let tail = specfun::factorial(2 * e.n + 1) * e.amplitude / (e.mu.powi(2 * e.n as i32 + 2) * 50f64.powi(e.n as i32 + 1));
        assert!((rp - tail).abs() < 1e-12 * tail);
    }
    assert_eq!(holds, vec![false, true, true, true, true]);
}
