use crate::{QuadError, Result};
use serde::{Deserialize, Serialize};

/// Truncation limits, node counts and tolerances for the three nesting levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub inner_limit: f64,
    pub inner_panels: usize,
    pub inner_tol: f64,
    pub middle_limit: f64,
    pub middle_panels: usize,
    pub middle_tol: f64,
    pub outer_panels: usize,
    pub outer_tol: f64,
    pub refine_factor: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            inner_limit: 200.0,
            inner_panels: 4001,
            inner_tol: 1e-14,
            middle_limit: 20.0,
            middle_panels: 201,
            middle_tol: 1e-11,
            outer_panels: 101,
            outer_tol: 1e-5,
            refine_factor: 1.5,
        }
    }
}

/// Scale the interval count by `factor`, rounded to the nearest even count.
///
/// 4001 -> 6001 and 201 -> 301 at factor 1.5; 101 -> 201 at factor 2.
pub fn refined_panels(panels: usize, factor: f64) -> usize {
    let intervals = (panels - 1) as f64 * factor;
    let even = 2 * ((intervals / 2.0).round() as usize).max(1);
    even + 1
}

fn check_panels(name: &str, p: usize) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(QuadError::Policy(format!("{name} = {p} must be odd and >= 3")));
    }
    Ok(())
}

impl PrecisionPolicy {
    pub fn validate(&self) -> Result<()> {
        check_panels("inner_panels", self.inner_panels)?;
        check_panels("middle_panels", self.middle_panels)?;
        check_panels("outer_panels", self.outer_panels)?;
        let positive = [
            self.inner_limit,
            self.middle_limit,
            self.inner_tol,
            self.middle_tol,
            self.outer_tol,
        ];
        if positive.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(QuadError::Policy("limits and tolerances must be positive".into()));
        }
        if !(self.inner_tol < self.middle_tol && self.middle_tol < self.outer_tol) {
            return Err(QuadError::Policy(format!(
                "tolerance ladder must satisfy inner < middle < outer, got {} / {} / {}",
                self.inner_tol, self.middle_tol, self.outer_tol
            )));
        }
        if !(self.refine_factor > 1.0) {
            return Err(QuadError::Policy("refine_factor must exceed 1".into()));
        }
        Ok(())
    }

    /// Inner limit and node count scaled by `refine_factor` (same step size).
    pub fn refined_inner(&self) -> Self {
        Self {
            inner_limit: self.inner_limit * self.refine_factor,
            inner_panels: refined_panels(self.inner_panels, self.refine_factor),
            ..*self
        }
    }

    /// Middle limit and node count scaled by `refine_factor`.
    pub fn refined_middle(&self) -> Self {
        Self {
            middle_limit: self.middle_limit * self.refine_factor,
            middle_panels: refined_panels(self.middle_panels, self.refine_factor),
            ..*self
        }
    }

    /// Outer node count doubled (101 -> 201); the outer interval is finite.
    pub fn refined_outer(&self) -> Self {
        Self {
            outer_panels: refined_panels(self.outer_panels, 2.0),
            ..*self
        }
    }
}
