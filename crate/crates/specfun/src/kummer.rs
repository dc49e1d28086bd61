//! Kummer's confluent hypergeometric function Φ(a, c; x) = 1F1(a; c; x).

use crate::{EvalPrecision, Result, SpecFunError};

/// Beyond this |x| (negative x, integer parameters) the terminating
/// algebraic expansion is used; the dropped part is O(e^{-|x|}).
const ALGEBRAIC_MIN_Z: f64 = 100.0;

pub fn kummer_phi(a: f64, c: f64, x: f64) -> Result<f64> {
    kummer_phi_with(a, c, x, &EvalPrecision::default())
}

pub fn kummer_phi_with(a: f64, c: f64, x: f64, prec: &EvalPrecision) -> Result<f64> {
    if !(a.is_finite() && c.is_finite() && x.is_finite()) {
        return Err(SpecFunError::Domain {
            func: "kummer_phi",
            detail: format!("non-finite input a={a}, c={c}, x={x}"),
        });
    }
    if c <= 0.0 && c == c.round() {
        return Err(SpecFunError::Domain {
            func: "kummer_phi",
            detail: format!("c must not be a non-positive integer, got {c}"),
        });
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if a == c {
        return Ok(x.exp());
    }
    if a <= 0.0 && a == a.round() {
        // terminating polynomial
        return ascending(a, c, x, prec);
    }
    if x > 0.0 {
        return ascending(a, c, x, prec);
    }
    let z = -x;
    if z > ALGEBRAIC_MIN_Z && is_positive_int(a) && is_positive_int(c) && a < c {
        return Ok(algebraic_negative(a as u32, c as u32, z));
    }
    // Kummer transform: all series terms are positive when c > a.
    Ok(x.exp() * ascending(c - a, c, z, prec)?)
}

fn is_positive_int(v: f64) -> bool {
    v >= 1.0 && v == v.round()
}

fn ascending(a: f64, c: f64, x: f64, prec: &EvalPrecision) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=prec.max_terms {
        let kf = k as f64;
        let ratio = (a + kf - 1.0) * x / ((c + kf - 1.0) * kf);
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        let tail_small = term.abs() <= 0.25 * f64::EPSILON * sum.abs()
            || term.abs() <= 1e-3 * prec.target_abs_error;
        if tail_small && ratio.abs() < 0.5 {
            return Ok(sum);
        }
    }
    Err(SpecFunError::Precision {
        func: "kummer_phi",
        terms: prec.max_terms,
        last_term: term,
    })
}

/// Φ(a, c; −z) for integers 1 <= a < c and large z:
/// Γ(c)/Γ(c−a) Σ_{s<c−a} (a)_s (a−c+1)_s / s! · z^{−a−s}.
fn algebraic_negative(a: u32, c: u32, z: f64) -> f64 {
    let af = a as f64;
    let bf = (a as f64) - (c as f64) + 1.0;
    // Γ(c)/Γ(c−a) = (c−a)(c−a+1)...(c−1)
    let lead: f64 = ((c - a)..c).map(|k| k as f64).product();
    let mut term = z.powi(-(a as i32));
    let mut sum = term;
    for s in 1..(c - a) {
        let sf = (s - 1) as f64;
        term *= (af + sf) * (bf + sf) / ((sf + 1.0) * z);
        sum += term;
    }
    lead * sum
}

/// The three terms of the contiguous relation and two residuals built from them.
///
/// `standard` is c Φ(a,c;x) − c Φ(a−1,c;x) − x Φ(a,c+1;x), which vanishes
/// identically. `printed` keeps an extra factor c on the last term and
/// equals (1 − c)·x·Φ(a,c+1;x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContiguousResidual {
    pub c_phi: f64,
    pub c_phi_a_minus: f64,
    pub phi_c_plus: f64,
    pub printed: f64,
    pub standard: f64,
}

pub fn contiguous_check(a: f64, c: f64, x: f64) -> Result<ContiguousResidual> {
    let phi = kummer_phi(a, c, x)?;
    let phi_am = kummer_phi(a - 1.0, c, x)?;
    let phi_cp = kummer_phi(a, c + 1.0, x)?;
    let c_phi = c * phi;
    let c_phi_a_minus = c * phi_am;
    Ok(ContiguousResidual {
        c_phi,
        c_phi_a_minus,
        phi_c_plus: phi_cp,
        printed: c_phi - c_phi_a_minus - x * c * phi_cp,
        standard: c_phi - c_phi_a_minus - x * phi_cp,
    })
}
