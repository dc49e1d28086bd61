use crate::{GridError, Result};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Periodic box [−L, L]^dim with M points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub dim: usize,
    pub half_width: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(dim: usize, half_width: f64, points: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(GridError::Grid(format!("dim must be 2 or 3, got {dim}")));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(GridError::Grid(format!("half width must be positive, got {half_width}")));
        }
        if points < 4 || points % 2 == 1 {
            return Err(GridError::Grid(format!("points per axis must be even and >= 4, got {points}")));
        }
        Ok(Self { dim, half_width, points })
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    /// Coordinate of node i along one axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    /// Signed integer wavenumber of FFT index i, in −M/2..M/2−1.
    pub fn wavenumber_index(&self, i: usize) -> i64 {
        if i < self.points / 2 {
            i as i64
        } else {
            i as i64 - self.points as i64
        }
    }

    /// γ component of FFT index i: (π/L)·k.
    pub fn wavenumber(&self, i: usize) -> f64 {
        std::f64::consts::PI / self.half_width * self.wavenumber_index(i) as f64
    }

    pub fn is_nyquist(&self, i: usize) -> bool {
        i == self.points / 2
    }

    /// Multi-index of a flat index; the last axis is contiguous.
    pub fn unflatten(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0; 3];
        for a in (0..self.dim).rev() {
            idx[a] = flat % self.points;
            flat /= self.points;
        }
        idx
    }

    /// Physical coordinates of a flat index.
    pub fn point(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = self.coordinate(idx[a]);
        }
        x
    }

    /// γ vector of a flat index.
    pub fn gamma(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let mut g = [0.0; 3];
        for a in 0..self.dim {
            g[a] = self.wavenumber(idx[a]);
        }
        g
    }

    /// True when the flat index lies on the box face x_a = −L for some axis.
    pub fn on_boundary(&self, flat: usize) -> bool {
        let idx = self.unflatten(flat);
        idx[..self.dim].iter().any(|&i| i == 0)
    }
}

/// Cached FFT plans for one grid.
pub struct Transform {
    grid: Grid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Transform {
    pub fn new(grid: Grid) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            forward: planner.plan_fft_forward(grid.points),
            inverse: planner.plan_fft_inverse(grid.points),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn along_axes(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let m = self.grid.points;
        let dim = self.grid.dim;
        let mut line = vec![Complex64::new(0.0, 0.0); m];
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        for a in 0..dim {
            let stride = m.pow((dim - 1 - a) as u32);
            let block = stride * m;
            for start in 0..data.len() / m {
                // start enumerates lines: outer block and offset inside the stride
                let base = (start / stride) * block + start % stride;
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[base + i * stride];
                }
                plan.process_with_scratch(&mut line, &mut scratch);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }

    /// Fourier coefficients of real samples (DFT divided by the point count).
    pub fn forward_real(&self, values: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward_in_place(&mut data);
        data
    }

    pub fn forward_in_place(&self, data: &mut [Complex64]) {
        self.along_axes(data, &self.forward);
        let scale = 1.0 / data.len() as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    /// Physical samples from coefficients; the imaginary part is dropped.
    pub fn inverse_real(&self, coeffs: &[Complex64]) -> Vec<f64> {
        let mut data = coeffs.to_vec();
        self.along_axes(&mut data, &self.inverse);
        data.iter().map(|v| v.re).collect()
    }

    /// Complex physical samples from coefficients.
    pub fn inverse_complex(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut data = coeffs.to_vec();
        self.along_axes(&mut data, &self.inverse);
        data
    }
}
