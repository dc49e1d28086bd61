use crate::{refined_panels, QuadError, Result};

fn check(a: f64, b: f64, panels: usize) -> Result<()> {
    if panels < 3 || panels % 2 == 0 {
        return Err(QuadError::Panels(panels));
    }
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(QuadError::Interval { a, b });
    }
    Ok(())
}

/// Nodes and weights of a composite Simpson rule, reusable across integrands.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpsonRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SimpsonRule {
    pub fn new(a: f64, b: f64, panels: usize) -> Result<Self> {
        check(a, b, panels)?;
        let h = (b - a) / (panels - 1) as f64;
        let nodes = (0..panels)
            .map(|i| if i + 1 == panels { b } else { a + i as f64 * h })
            .collect();
        let weights = (0..panels)
            .map(|i| {
                let w = if i == 0 || i + 1 == panels {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * h / 3.0
            })
            .collect();
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Weighted sum of pre-sampled values, left to right.
    pub fn apply(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.weights.len());
        let mut acc = 0.0;
        for (w, v) in self.weights.iter().zip(values) {
            acc += w * v;
        }
        acc
    }
}

/// Composite Simpson integral of `f` over [a, b] with `panels` nodes.
pub fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> Result<f64> {
    let rule = SimpsonRule::new(a, b, panels)?;
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(*x);
        if !v.is_finite() {
            return Err(QuadError::NonFinite { x: *x, value: v });
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Result of a truncated improper integral and its self-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub value: f64,
    pub refined_value: f64,
    pub difference: f64,
    pub verified: bool,
}

/// ∫_0^limit f, re-run on [0, 1.5·limit] with 1.5× the intervals.
///
/// `verified` is false when the two runs differ by more than `tol`; that is
/// reported to the caller rather than raised as an error.
pub fn truncated_improper<F: FnMut(f64) -> f64>(
    mut f: F,
    limit: f64,
    panels: usize,
    tol: f64,
) -> Result<TailCheck> {
    const FACTOR: f64 = 1.5;
    let value = simpson(&mut f, 0.0, limit, panels)?;
    let refined_value = simpson(&mut f, 0.0, limit * FACTOR, refined_panels(panels, FACTOR))?;
    let difference = (refined_value - value).abs();
    Ok(TailCheck {
        value,
        refined_value,
        difference,
        verified: difference <= tol,
    })
}
