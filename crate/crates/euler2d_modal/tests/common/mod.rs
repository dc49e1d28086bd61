#![allow(dead_code)]

use euler2d_modal::{EulerForcing, ModalSample};

/// Composite Simpson on [a, b] with `intervals` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Fourth-order central difference.
pub fn deriv(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Presets: n = 1..5, F = 1/n, σ = 10, μ per mode.
pub fn presets() -> Vec<EulerForcing> {
    let mus = [1.0, 1.0, 1.3, 1.5, 1.7];
    (1..=5u32)
        .map(|n| EulerForcing::new(n, 1.0 / n as f64, mus[n as usize - 1], 10.0).unwrap())
        .collect()
}

/// Cartesian divergence of a sampled field by central differences.
pub fn divergence(
    field: &dyn Fn(f64, f64) -> ModalSample,
    x: f64,
    y: f64,
    h: f64,
) -> (f64, f64) {
    let at = |x: f64, y: f64| {
        let r = x.hypot(y);
        let phi = y.atan2(x);
        field(r, phi)
    };
    let dx1 = (at(x + h, y).u1 - at(x - h, y).u1) / (2.0 * h);
    let dy2 = (at(x, y + h).u2 - at(x, y - h).u2) / (2.0 * h);
    let dy1 = (at(x, y + h).u1 - at(x, y - h).u1) / (2.0 * h);
    let dx2 = (at(x + h, y).u2 - at(x - h, y).u2) / (2.0 * h);
    let grad = dx1.norm().max(dy2.norm()).max(dy1.norm()).max(dx2.norm());
    ((dx1 + dy2).norm(), grad)
}
