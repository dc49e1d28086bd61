//! Integer-order incomplete gamma functions, factorials and Pochhammer symbols.

use crate::{Result, SpecFunError};

/// k! as f64. Exact for k <= 22, correctly rounded product beyond that.
pub fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Rising factorial (a)_l = a (a+1) ... (a+l-1).
pub fn pochhammer(a: f64, l: u32) -> f64 {
    (0..l).fold(1.0, |acc, i| acc * (a + i as f64))
}

fn check_args(func: &'static str, a: u32, x: f64) -> Result<()> {
    if a == 0 {
        return Err(SpecFunError::Domain {
            func,
            detail: "order a must be a positive integer".into(),
        });
    }
    if !(x >= 0.0) {
        return Err(SpecFunError::Domain {
            func,
            detail: format!("x must be non-negative, got {x}"),
        });
    }
    Ok(())
}

/// Upper incomplete gamma Γ(a, x) = (a-1)! e^{-x} Σ_{k<a} x^k / k!.
pub fn upper_gamma_int(a: u32, x: f64) -> Result<f64> {
    check_args("upper_gamma_int", a, x)?;
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    // Horner form of Σ_{k<a} x^k / k!
    let mut sum = 1.0;
    for k in (1..a).rev() {
        sum = 1.0 + sum * x / k as f64;
    }
    Ok(factorial(a - 1) * (-x).exp() * sum)
}

/// Lower incomplete gamma γ(a, x) = (a-1)! − Γ(a, x).
///
/// Below x = a the difference loses digits to cancellation, so the
/// ascending series x^a e^{-x} Σ x^k / (a)_{k+1} is used there instead.
pub fn lower_gamma_int(a: u32, x: f64) -> Result<f64> {
    check_args("lower_gamma_int", a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x < a as f64 {
        let af = a as f64;
        let mut term = 1.0 / af;
        let mut sum = term;
        for k in 1..400u32 {
            term *= x / (af + k as f64);
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        Ok(x.powi(a as i32) * (-x).exp() * sum)
    } else {
        Ok(factorial(a - 1) - upper_gamma_int(a, x)?)
    }
}

/// γ(a, x) / x^a, finite at x = 0 where it equals 1/a.
///
/// Avoids the 0/0 form that `lower_gamma_int(a, x) / x.powi(a)` hits for
/// tiny x.
pub fn lower_gamma_scaled_int(a: u32, x: f64) -> Result<f64> {
    check_args("lower_gamma_scaled_int", a, x)?;
    let af = a as f64;
    if x < af {
        let mut term = 1.0 / af;
        let mut sum = term;
        for k in 1..400u32 {
            term *= x / (af + k as f64);
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        Ok((-x).exp() * sum)
    } else {
        Ok(lower_gamma_int(a, x)? / x.powi(a as i32))
    }
}
