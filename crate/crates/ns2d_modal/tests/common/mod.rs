#![allow(dead_code)]

use ns2d_modal::NsForcing;

/// Composite Simpson with an even number of intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(intervals % 2 == 0);
    let h = (b - a) / intervals as f64;
    let mut acc = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Fourth-order central difference.
pub fn deriv(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// The fifteen viscous presets: n = 1..5, F = 1/n, μ = 1, ν ∈ {1.5, 1, 0.75}.
pub fn presets() -> Vec<NsForcing> {
    let mut out = Vec::new();
    for n in 1..=5u32 {
        for nu in [1.5, 1.0, 0.75] {
            out.push(NsForcing::new(n, 1.0 / n as f64, 1.0, nu).unwrap());
        }
    }
    out
}
