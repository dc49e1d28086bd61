use crate::{PrecisionPolicy, QuadError, Result, SimpsonRule};

/// ∫_0^∞ J_μ(a t) J_{μ−1}(b t) dt for a, b > 0 and μ > 0.
///
/// b < a: b^{μ−1}/a^μ; b = a: 1/(2b); b > a: 0.
pub fn weber_schafheitlin(mu: f64, a: f64, b: f64) -> f64 {
    if b < a {
        b.powf(mu - 1.0) / a.powf(mu)
    } else if b == a {
        0.5 / b
    } else {
        0.0
    }
}

/// ∫_0^t ∫_0^{A2} ∫_0^{A1} kernel(τ, r̃, ρ) dρ dr̃ dτ by nested Simpson.
///
/// When `endpoint` is given, the inner integral at τ = t is replaced by
/// `endpoint(r̃)`, the analytically known value of ∫_0^∞ kernel(t, r̃, ρ) dρ.
pub fn iterated_triple<K>(
    t: f64,
    policy: &PrecisionPolicy,
    kernel: K,
    endpoint: Option<&dyn Fn(f64) -> f64>,
) -> Result<f64>
where
    K: Fn(f64, f64, f64) -> f64,
{
    policy.validate()?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let outer = SimpsonRule::new(0.0, t, policy.outer_panels)?;
    let middle = SimpsonRule::new(0.0, policy.middle_limit, policy.middle_panels)?;
    let inner = SimpsonRule::new(0.0, policy.inner_limit, policy.inner_panels)?;

    let mut total = 0.0;
    for (k, (&tau, &w_tau)) in outer.nodes.iter().zip(&outer.weights).enumerate() {
        let at_end = k + 1 == outer.len();
        let mut mid_sum = 0.0;
        for (&rt, &w_rt) in middle.nodes.iter().zip(&middle.weights) {
            let inner_value = match (at_end, endpoint) {
                (true, Some(end)) => end(rt),
                _ => {
                    let mut acc = 0.0;
                    for (&rho, &w_rho) in inner.nodes.iter().zip(&inner.weights) {
                        let v = kernel(tau, rt, rho);
                        if !v.is_finite() {
                            return Err(QuadError::NonFiniteTriple {
                                tau,
                                r_tilde: rt,
                                rho,
                                value: v,
                            });
                        }
                        acc += w_rho * v;
                    }
                    acc
                }
            };
            mid_sum += w_rt * inner_value;
        }
        total += w_tau * mid_sum;
    }
    Ok(total)
}
