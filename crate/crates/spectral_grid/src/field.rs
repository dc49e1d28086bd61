use crate::{Grid, GridError, Result, Transform};
use num_complex::Complex64;

/// Velocity coefficients U(γ), one array per component.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub grid: Grid,
    pub comps: Vec<Vec<Complex64>>,
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            comps: vec![vec![Complex64::new(0.0, 0.0); grid.len()]; grid.dim],
        }
    }

    pub fn from_physical(tr: &Transform, values: &[Vec<f64>]) -> Result<Self> {
        let grid = *tr.grid();
        if values.len() != grid.dim || values.iter().any(|v| v.len() != grid.len()) {
            return Err(GridError::Input(format!(
                "expected {} components of {} samples",
                grid.dim,
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            comps: values.iter().map(|v| tr.forward_real(v)).collect(),
        })
    }

    /// Samples a vector function u(x) on the grid.
    pub fn sample(tr: &Transform, f: impl Fn(&[f64; 3]) -> [f64; 3]) -> Self {
        let grid = *tr.grid();
        let mut values = vec![vec![0.0; grid.len()]; grid.dim];
        for flat in 0..grid.len() {
            let u = f(&grid.point(flat));
            for (a, comp) in values.iter_mut().enumerate() {
                comp[flat] = u[a];
            }
        }
        Self::from_physical(tr, &values).expect("shape matches grid")
    }

    pub fn to_physical(&self, tr: &Transform) -> Vec<Vec<f64>> {
        self.comps.iter().map(|c| tr.inverse_real(c)).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        for c in out.comps.iter_mut() {
            for v in c.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, o) in out.comps.iter_mut().zip(&other.comps) {
            for (v, w) in c.iter_mut().zip(o) {
                *v -= w;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, o) in out.comps.iter_mut().zip(&other.comps) {
            for (v, w) in c.iter_mut().zip(o) {
                *v += w;
            }
        }
        out
    }

    /// Sets the γ = 0 coefficient of every component to 0.
    pub fn remove_mean(&mut self) {
        for c in self.comps.iter_mut() {
            c[0] = Complex64::new(0.0, 0.0);
        }
    }

    /// Largest |γ·U(γ)| / (|γ| max|U|) over γ ≠ 0. Normalising by the peak
    /// coefficient keeps round-off-level modes from dominating.
    pub fn divergence_ratio(&self) -> f64 {
        let peak = (0..self.grid.len())
            .map(|flat| self.comps.iter().map(|c| c[flat].norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for flat in 1..self.grid.len() {
            let g = self.grid.gamma(flat);
            let mut dot = Complex64::new(0.0, 0.0);
            let mut g2 = 0.0;
            for a in 0..self.grid.dim {
                dot += self.comps[a][flat] * g[a];
                g2 += g[a] * g[a];
            }
            worst = worst.max(dot.norm() / g2.sqrt());
        }
        worst / peak
    }

    /// Largest |U(−γ) − conj U(γ)| relative to the largest coefficient.
    pub fn conjugate_symmetry_error(&self) -> f64 {
        let m = self.grid.points;
        let mut worst: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for c in &self.comps {
            for flat in 0..self.grid.len() {
                let idx = self.grid.unflatten(flat);
                let mut mirror = 0;
                for a in 0..self.grid.dim {
                    mirror = mirror * m + (m - idx[a]) % m;
                }
                worst = worst.max((c[mirror] - c[flat].conj()).norm());
                peak = peak.max(c[flat].norm());
            }
        }
        if peak > 0.0 {
            worst / peak
        } else {
            0.0
        }
    }

    /// ∫_box |u|² dx by Parseval.
    pub fn energy(&self) -> f64 {
        let volume = (2.0 * self.grid.half_width).powi(self.grid.dim as i32);
        volume * self.comps.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>()
    }

    /// max over grid points of the Euclidean norm of u.
    pub fn sup_norm(&self, tr: &Transform) -> f64 {
        let phys = self.to_physical(tr);
        (0..self.grid.len())
            .map(|i| phys.iter().map(|c| c[i] * c[i]).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// Coefficients of ∂_axis of one component; the Nyquist mode is dropped.
    pub fn derivative(&self, comp: usize, axis: usize) -> Vec<Complex64> {
        derivative(&self.grid, &self.comps[comp], axis)
    }
}

pub(crate) fn derivative(grid: &Grid, coeffs: &[Complex64], axis: usize) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(flat, &v)| {
            let i = grid.unflatten(flat)[axis];
            if grid.is_nyquist(i) {
                Complex64::new(0.0, 0.0)
            } else {
                v * Complex64::new(0.0, grid.wavenumber(i))
            }
        })
        .collect()
}
