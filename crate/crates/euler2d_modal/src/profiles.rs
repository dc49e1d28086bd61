//! Radial and tangential profile integrals for an arbitrary force profile.
//!
//! A force f(r) e^{inφ} (radial or tangential) produces velocity profiles
//! R_{n−1}(r) = r^{n−1} ∫_r^∞ f / s^n ds and R_{n+1}(r) = r^{−(n+1)} ∫_0^r s^n f ds.

use crate::{EulerError, Result};
use quadrature::simpson;

/// Truncation and resolution of the profile integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileQuadrature {
    /// The semi-infinite integral is cut at r + tail.
    pub tail: f64,
    /// Simpson nodes on each finite piece.
    pub panels: usize,
    /// Allowed change when the tail is extended by half.
    pub tol: f64,
}

impl Default for ProfileQuadrature {
    fn default() -> Self {
        Self {
            tail: 80.0,
            panels: 8001,
            tol: 1e-10,
        }
    }
}

/// Offset standing in for s = 0 in integrands of the form f(s)/s^k.
const ORIGIN_NUDGE: f64 = 1e-9;

/// ∫_lo^{lo+len} with a geometric node spacing near lo, where integrands of
/// the form f(s)/s^k vary fastest: s = lo·e^v on [lo, lo + 1], uniform beyond.
fn graded_integral<F: Fn(f64) -> f64>(g: &F, lo: f64, len: f64, panels: usize) -> Result<f64> {
    let mid = lo + 1.0_f64.min(len);
    let near = simpson(|v: f64| {
        let s = lo * v.exp();
        g(s) * s
    }, 0.0, (mid / lo).ln(), panels)?;
    let far = if mid < lo + len {
        simpson(g, mid, lo + len, panels)?
    } else {
        0.0
    };
    Ok(near + far)
}

fn outer_integral<F: Fn(f64) -> f64>(g: &F, r: f64, q: &ProfileQuadrature) -> Result<f64> {
    let lo = if r == 0.0 { ORIGIN_NUDGE } else { r };
    let value = graded_integral(g, lo, r + q.tail - lo, q.panels)?;
    let refined_limit = r + 1.5 * q.tail;
    let refined = graded_integral(
        g,
        lo,
        refined_limit - lo,
        quadrature::refined_panels(q.panels, 1.5),
    )?;
    let difference = (refined - value).abs();
    if difference > q.tol * (1.0 + value.abs()) {
        return Err(EulerError::DivergentTail {
            limit: r + q.tail,
            refined_limit,
            difference,
        });
    }
    Ok(value)
}

fn check_r(r: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(EulerError::Domain(format!("r must be finite and >= 0, got {r}")));
    }
    Ok(())
}

/// (R_{n−1}, R_{n+1}) at radius r for a radial force profile f_r.
///
/// At r = 0: R_{n+1} → f(0)/(n+1); R_{n−1} → f(0)/(n−1) for n ≥ 2 and
/// ∫_0^∞ f/s for n = 1 (finite only when f(0) = 0).
/// n = 0 is accepted (the profiles are finite for r > 0) although the field
/// built from it vanishes.
pub fn modal_radial_profiles<F: Fn(f64) -> f64>(
    n: u32,
    f_r: F,
    r: f64,
    quad: &ProfileQuadrature,
) -> Result<(f64, f64)> {
    check_r(r)?;
    let nf = n as f64;
    if r == 0.0 {
        if n == 0 {
            return Err(EulerError::Domain("n = 0 profile is singular at r = 0".into()));
        }
        let plus = f_r(0.0) / (nf + 1.0);
        let minus = if n == 1 {
            outer_integral(&|s: f64| f_r(s) / s, 0.0, quad)?
        } else {
            f_r(0.0) / (nf - 1.0)
        };
        return Ok((minus, plus));
    }
    let outer = outer_integral(&|s: f64| f_r(s) / s.powi(n as i32), r, quad)?;
    let inner = simpson(|s| s.powi(n as i32) * f_r(s), 0.0, r, quad.panels)?;
    Ok((r.powi(n as i32 - 1) * outer, inner / r.powi(n as i32 + 1)))
}

/// (R_{n−1,φ}, R_{n+1,φ}) at radius r for a tangential force profile f_φ.
///
/// The definitions involve (f_φ s)′; both are integrated by parts so only
/// f_φ itself is sampled:
/// ∫_r^∞ g′ s^{−n} = −g(r) r^{−n} + n ∫_r^∞ g s^{−n−1},
/// ∫_0^r g′ s^n = r^n g(r) − n ∫_0^r g s^{n−1}, with g = f_φ s.
pub fn modal_tangential_profiles<F: Fn(f64) -> f64>(
    n: u32,
    f_phi: F,
    r: f64,
    quad: &ProfileQuadrature,
) -> Result<(f64, f64)> {
    check_r(r)?;
    if n == 0 {
        return Err(EulerError::Domain("tangential profiles need n >= 1".into()));
    }
    let nf = n as f64;
    let g = |s: f64| f_phi(s) * s;
    if r == 0.0 {
        // (f_φ s)′ → f_φ(0) at the origin
        let plus = -f_phi(0.0) / (nf + 1.0);
        let minus = if n == 1 {
            f_phi(0.0) - outer_integral(&|s: f64| f_phi(s) / s, 0.0, quad)?
        } else {
            -f_phi(0.0) / (nf - 1.0)
        };
        return Ok((minus, plus));
    }
    let outer = outer_integral(&|s: f64| g(s) / s.powi(n as i32 + 1), r, quad)?;
    let minus_int = -g(r) / r.powi(n as i32) + nf * outer;
    let inner = simpson(|s| s.powi(n as i32 - 1) * g(s), 0.0, r, quad.panels)?;
    let plus_int = r.powi(n as i32) * g(r) - nf * inner;
    Ok((
        -r.powi(n as i32 - 1) * minus_int,
        -plus_int / r.powi(n as i32 + 1),
    ))
}
