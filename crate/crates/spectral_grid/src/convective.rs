use crate::field::derivative;
use crate::{Grid, SpectralField, Transform};
use num_complex::Complex64;

/// Largest admissible coefficient ratio outside the retained two thirds.
pub const RESOLUTION_TAIL: f64 = 1e-8;

fn retained(grid: &Grid, flat: usize) -> bool {
    let idx = grid.unflatten(flat);
    idx[..grid.dim]
        .iter()
        .all(|&i| 3 * grid.wavenumber_index(i).unsigned_abs() as usize <= grid.points)
}

fn dealias(grid: &Grid, coeffs: &mut [Complex64]) {
    for (flat, v) in coeffs.iter_mut().enumerate() {
        if !retained(grid, flat) {
            *v = Complex64::new(0.0, 0.0);
        }
    }
}

/// max |U| over modes beyond two thirds of the band / max |U|.
pub fn resolution_tail(u: &SpectralField) -> f64 {
    let (mut tail, mut peak): (f64, f64) = (0.0, 0.0);
    for c in &u.comps {
        for (flat, v) in c.iter().enumerate() {
            peak = peak.max(v.norm());
            if !retained(&u.grid, flat) {
                tail = tail.max(v.norm());
            }
        }
    }
    if peak > 0.0 {
        tail / peak
    } else {
        0.0
    }
}

/// (u·∇)u with its resolution diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvectiveTerm {
    pub field: SpectralField,
    pub tail_ratio: f64,
    pub resolved: bool,
}

/// Pseudo-spectral (u·∇)u: products in physical space, both the input and
/// the product truncated to the lower two thirds of the band.
pub fn convective_term(tr: &Transform, u: &SpectralField) -> ConvectiveTerm {
    let grid = u.grid;
    let tail_ratio = resolution_tail(u);
    let mut trunc = u.clone();
    for c in trunc.comps.iter_mut() {
        dealias(&grid, c);
    }
    let phys = trunc.to_physical(tr);
    let mut out = SpectralField::zeros(grid);
    for i in 0..grid.dim {
        let mut prod = vec![0.0; grid.len()];
        for (j, uj) in phys.iter().enumerate() {
            let d = tr.inverse_real(&derivative(&grid, &trunc.comps[i], j));
            for ((p, a), b) in prod.iter_mut().zip(uj).zip(&d) {
                *p += a * b;
            }
        }
        let mut coeffs = tr.forward_real(&prod);
        dealias(&grid, &mut coeffs);
        out.comps[i] = coeffs;
    }
    ConvectiveTerm {
        field: out,
        tail_ratio,
        resolved: tail_ratio <= RESOLUTION_TAIL,
    }
}
