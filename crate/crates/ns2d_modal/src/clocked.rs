//! First iterate with the force clock decoupled from the evaluation time.
//!
//! The closed form evaluates the time weight y² against the same t it is
//! sampled at. To check the linear equation ∂_t u − νΔu = f one needs a
//! field whose force does not move with t, so here the weight is
//! w(τ) = 1/(4μ²ν(t_force − τ) + 1)² and the evaluation time runs freely.
//! At t_eval = t_force the result coincides with the closed form.

use crate::forcing::check_t;
use crate::{NsError, NsForcing, Result};
use euler2d_modal::{ModalField, ModalSample};
use specfun::kummer_phi;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockedProfiles {
    pub minus: f64,
    pub plus: f64,
}

impl ClockedProfiles {
    pub fn sample(&self, n: u32, phi: f64) -> ModalSample {
        ModalField::from_profiles(n, self.minus, self.plus, phi, 1.0)
    }
}

/// Profiles of u₁(r, t_eval) for the force frozen on the clock `t_force`,
/// by Simpson quadrature with `panels` nodes. The τ integral is taken in
/// s = ln(4μ²ν(t_eval − τ) + 1), which spreads out the layer at τ = t_eval.
pub fn ns_u1_clocked(
    f: &NsForcing,
    r: f64,
    t_eval: f64,
    t_force: f64,
    panels: usize,
) -> Result<ClockedProfiles> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(NsError::Domain(format!("r must be finite and >= 0, got {r}")));
    }
    check_t(t_eval)?;
    if !t_force.is_finite() {
        return Err(NsError::Domain(format!("t_force must be finite, got {t_force}")));
    }
    if t_eval == 0.0 {
        return Ok(ClockedProfiles { minus: 0.0, plus: 0.0 });
    }
    let n = f.n as i32;
    let nf = f.n as f64;
    let mu2 = f.mu * f.mu;
    let x = mu2 * r * r;
    let rate = 4.0 * mu2 * f.nu;
    let rule = quadrature::SimpsonRule::new(0.0, f.attenuation(t_eval).ln(), panels)?;
    let (mut acc_m, mut acc_p) = (0.0, 0.0);
    for (&s, &ws) in rule.nodes.iter().zip(&rule.weights) {
        let d = s.exp();
        let tau = t_eval - (d - 1.0) / rate;
        let w = ws * d / rate;
        let weight = f.time_weight(t_force, tau);
        acc_m += w * weight * (-x / d).exp() / d.powi(n);
        acc_p += w * weight * kummer_phi(nf + 1.0, nf + 2.0, -x / d)? / d.powi(n + 1);
    }
    Ok(ClockedProfiles {
        minus: f.amplitude * r.powi(n - 1) / (2.0 * mu2) * acc_m,
        plus: f.amplitude * r.powi(n + 1) / (2.0 * (nf + 1.0)) * acc_p,
    })
}
