//! Periodic fixtures on [−π, π]^N. None of them decays, so runs built on
//! them switch the decay certificate off.

use crate::{GridForcing, SpectralField, Transform};

/// (sin x cos y, −cos x sin y). Its convective term is a pure gradient, so
/// with f = 0 the exact solution is e^{−2νt} u⁰.
pub fn taylor_green_2d(tr: &Transform) -> SpectralField {
    SpectralField::sample(tr, |x| [x[0].sin() * x[1].cos(), -x[0].cos() * x[1].sin(), 0.0])
}

/// (sin x cos y cos z, −cos x sin y cos z, 0).
pub fn taylor_green_3d(tr: &Transform) -> SpectralField {
    SpectralField::sample(tr, |x| {
        [
            x[0].sin() * x[1].cos() * x[2].cos(),
            -x[0].cos() * x[1].sin() * x[2].cos(),
            0.0,
        ]
    })
}

fn spatial(tr: &Transform, f: impl Fn(&[f64; 3]) -> [f64; 3]) -> Vec<Vec<f64>> {
    let grid = tr.grid();
    let mut comps = vec![vec![0.0; grid.len()]; grid.dim];
    for flat in 0..grid.len() {
        let v = f(&grid.point(flat));
        for (a, c) in comps.iter_mut().enumerate() {
            c[flat] = v[a];
        }
    }
    comps
}

/// Constant-in-time A (sin y, sin x).
pub fn single_mode_2d(tr: &Transform, amplitude: f64) -> GridForcing {
    GridForcing::separable(spatial(tr, |x| [amplitude * x[1].sin(), amplitude * x[0].sin(), 0.0]), |_| 1.0)
}

/// Constant-in-time A (sin z, sin x, sin y); its convective term is not a
/// gradient, so the iteration has real work to do.
pub fn single_mode_3d(tr: &Transform, amplitude: f64) -> GridForcing {
    GridForcing::separable(
        spatial(tr, |x| [amplitude * x[2].sin(), amplitude * x[0].sin(), amplitude * x[1].sin()]),
        |_| 1.0,
    )
}
