//! Independent quadrature oracles used only by the tests.
#![allow(dead_code)]

/// Romberg integration on [a, b]; stops when two diagonal entries agree to `tol`.
pub fn romberg(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut rows: Vec<Vec<f64>> = vec![vec![0.5 * (b - a) * (f(a) + f(b))]];
    let mut n = 1usize;
    for level in 1..22 {
        n *= 2;
        let h = (b - a) / n as f64;
        let mid: f64 = (1..n).step_by(2).map(|i| f(a + i as f64 * h)).sum();
        let mut row = vec![0.5 * rows[level - 1][0] + h * mid];
        // a few extrapolation columns only; deeper ones amplify rounding
        let mut pow4 = 1.0;
        for k in 1..=level.min(5) {
            pow4 *= 4.0;
            let prev = &rows[level - 1];
            row.push(row[k - 1] + (row[k - 1] - prev[k - 1]) / (pow4 - 1.0));
        }
        let k = level.min(5);
        let done = level > 5 && (row[k] - rows[level - 1][k]).abs() <= tol;
        rows.push(row);
        if done {
            break;
        }
    }
    *rows.last().unwrap().last().unwrap()
}

/// Unit-circle integral for J_n: i^{-n}/(2π) ∮ e^{i x cos θ + i n θ} dθ,
/// reduced to its real part and summed with the periodic trapezoid rule.
pub fn bessel_circle(n: u32, x: f64, nodes: usize) -> f64 {
    let half_pi_n = std::f64::consts::FRAC_PI_2 * n as f64;
    let dtheta = std::f64::consts::TAU / nodes as f64;
    let mut acc = 0.0;
    for k in 0..nodes {
        let theta = k as f64 * dtheta;
        acc += (x * theta.cos() + n as f64 * theta - half_pi_n).cos();
    }
    acc / nodes as f64
}
