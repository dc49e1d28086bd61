use crate::{GridError, Result, SpectralField, Transform};
use serde::{Deserialize, Serialize};

/// Boundary-versus-interior magnitude of a forcing, the numerical proxy
/// for membership in the decaying class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub boundary_max: f64,
    pub interior_max: f64,
    pub threshold: f64,
}

impl DecayCertificate {
    pub const THRESHOLD: f64 = 1e-6;

    pub fn ok(&self) -> bool {
        self.boundary_max <= self.threshold * self.interior_max
    }
}

type TimeWeight = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Force samples on the physical grid.
pub enum GridForcing {
    /// Values given at explicit times; the solver's time grid must match.
    Sampled {
        times: Vec<f64>,
        values: Vec<Vec<Vec<f64>>>,
    },
    /// A fixed spatial field times a scalar weight g(τ).
    Separable {
        spatial: Vec<Vec<f64>>,
        weight: TimeWeight,
    },
    Zero,
}

fn magnitude_bounds(tr: &Transform, comps: &[Vec<f64>]) -> (f64, f64) {
    let grid = tr.grid();
    let (mut b, mut m): (f64, f64) = (0.0, 0.0);
    for flat in 0..grid.len() {
        let v = comps.iter().map(|c| c[flat] * c[flat]).sum::<f64>().sqrt();
        m = m.max(v);
        if grid.on_boundary(flat) {
            b = b.max(v);
        }
    }
    (b, m)
}

impl GridForcing {
    pub fn separable(spatial: Vec<Vec<f64>>, weight: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        GridForcing::Separable {
            spatial,
            weight: Box::new(weight),
        }
    }

    /// Samples a space-time function f(x, τ) at the given times.
    pub fn sampled_from(tr: &Transform, times: &[f64], f: impl Fn(&[f64; 3], f64) -> [f64; 3]) -> Self {
        let grid = tr.grid();
        let values = times
            .iter()
            .map(|&t| {
                let mut comps = vec![vec![0.0; grid.len()]; grid.dim];
                for flat in 0..grid.len() {
                    let v = f(&grid.point(flat), t);
                    for (a, c) in comps.iter_mut().enumerate() {
                        c[flat] = v[a];
                    }
                }
                comps
            })
            .collect();
        GridForcing::Sampled {
            times: times.to_vec(),
            values,
        }
    }

    fn check_shape(tr: &Transform, comps: &[Vec<f64>]) -> Result<()> {
        let g = tr.grid();
        if comps.len() != g.dim || comps.iter().any(|c| c.len() != g.len()) {
            return Err(GridError::Input("forcing samples do not match the grid".into()));
        }
        Ok(())
    }

    /// Mean-corrected coefficients at every requested time.
    pub fn coefficients(&self, tr: &Transform, times: &[f64]) -> Result<Vec<SpectralField>> {
        let grid = *tr.grid();
        let mut out = Vec::with_capacity(times.len());
        match self {
            GridForcing::Zero => {
                out.resize(times.len(), SpectralField::zeros(grid));
            }
            GridForcing::Separable { spatial, weight } => {
                Self::check_shape(tr, spatial)?;
                let mut base = SpectralField::from_physical(tr, spatial)?;
                base.remove_mean();
                for &t in times {
                    out.push(base.scale(weight(t)));
                }
            }
            GridForcing::Sampled { times: own, values } => {
                if own.len() != times.len()
                    || own.iter().zip(times).any(|(a, b)| (a - b).abs() > 1e-12 * b.abs().max(1.0))
                {
                    return Err(GridError::Input(
                        "sampled forcing times differ from the solver time grid".into(),
                    ));
                }
                for v in values {
                    Self::check_shape(tr, v)?;
                    let mut f = SpectralField::from_physical(tr, v)?;
                    f.remove_mean();
                    out.push(f);
                }
            }
        }
        Ok(out)
    }

    /// Physical samples at one time (no mean correction).
    pub fn physical_at(&self, tr: &Transform, index: usize, t: f64) -> Vec<Vec<f64>> {
        let grid = tr.grid();
        match self {
            GridForcing::Zero => vec![vec![0.0; grid.len()]; grid.dim],
            GridForcing::Separable { spatial, weight } => {
                let w = weight(t);
                spatial.iter().map(|c| c.iter().map(|v| v * w).collect()).collect()
            }
            GridForcing::Sampled { values, .. } => values[index].clone(),
        }
    }

    /// Decay certificate, worst over the sampled times (spatial field for
    /// the separable form).
    pub fn certificate(&self, tr: &Transform) -> DecayCertificate {
        let (b, m) = match self {
            GridForcing::Zero => (0.0, 0.0),
            GridForcing::Separable { spatial, .. } => magnitude_bounds(tr, spatial),
            GridForcing::Sampled { values, .. } => values
                .iter()
                .map(|v| magnitude_bounds(tr, v))
                .fold((0.0f64, 0.0f64), |(b, m), (x, y)| (b.max(x), m.max(y))),
        };
        DecayCertificate {
            boundary_max: b,
            interior_max: m,
            threshold: DecayCertificate::THRESHOLD,
        }
    }
}
