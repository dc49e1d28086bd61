//! Bessel functions of the first kind and integer order.
//!
//! Regimes, for |x| below `max(12, 2n)`:
//! * |x| <= 1: ascending power series (no cancellation there).
//! * otherwise: Miller's backward recurrence normalised with
//!   J_0 + 2 sum J_{2k} = 1.
//!
//! For |x| at or above `max(12, 2n)` the order is below x/2, so upward
//! recurrence from J_0, J_1 is stable. J_0 and J_1 themselves come from
//! the Hankel asymptotic expansion once |x| >= 25 and from Miller's
//! recurrence in between.

use crate::{Result, SpecFunError};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

const HANKEL_MIN_X: f64 = 25.0;
const RESCALE: f64 = 1e250;

/// J_n(x) for integer n >= 0 and finite real x.
pub fn bessel_jn(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(SpecFunError::Domain {
            func: "bessel_jn",
            detail: format!("x must be finite, got {x}"),
        });
    }
    let ax = x.abs();
    let value = if ax == 0.0 {
        if n == 0 {
            1.0
        } else {
            0.0
        }
    } else if ax < switchover(n) {
        if ax <= 1.0 {
            power_series(n, ax)
        } else {
            miller(n, ax)
        }
    } else {
        large_regime(n, ax)
    };
    // J_n(-x) = (-1)^n J_n(x)
    if x < 0.0 && n % 2 == 1 {
        Ok(-value)
    } else {
        Ok(value)
    }
}

fn switchover(n: u32) -> f64 {
    (2.0 * n as f64).max(12.0)
}

fn power_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for i in 1..=n {
        lead *= half / i as f64;
    }
    let q = -half * half;
    let mut term = lead;
    let mut sum = lead;
    for k in 1..200u32 {
        term *= q / (k as f64 * (n + k) as f64);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Backward recurrence; returns J_n(x) for x > 0.
fn miller(n: u32, x: f64) -> f64 {
    let top = (n as f64).max(x.ceil());
    let mut m = (top + (160.0 * top).sqrt()) as u32 + 10;
    if m % 2 == 1 {
        m += 1;
    }
    let two_over_x = 2.0 / x;
    let mut b_next = 0.0; // b_{k+1}
    let mut b = 1e-300; // b_k, starting at k = m
    let mut norm = 0.0;
    let mut saved = if n == m { b } else { 0.0 };
    let mut k = m;
    while k > 0 {
        let b_prev = k as f64 * two_over_x * b - b_next;
        b_next = b;
        b = b_prev;
        k -= 1;
        if k == n {
            saved = b;
        }
        if k % 2 == 0 && k > 0 {
            norm += 2.0 * b;
        }
        if b.abs() > RESCALE {
            b /= RESCALE;
            b_next /= RESCALE;
            norm /= RESCALE;
            saved /= RESCALE;
        }
    }
    norm += b;
    saved / norm
}

fn j0_j1(x: f64) -> (f64, f64) {
    if x >= HANKEL_MIN_X {
        (hankel(0, x), hankel(1, x))
    } else {
        (miller(0, x), miller(1, x))
    }
}

fn large_regime(n: u32, x: f64) -> f64 {
    let (j0, j1) = j0_j1(x);
    if n == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = j1;
    for k in 1..n {
        let next = 2.0 * k as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Hankel's expansion for order 0 or 1.
fn hankel(order: u32, x: f64) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..120u32 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > last || mag < 1e-18 {
            break;
        }
        last = mag;
        // a_k / x^k enters P for even k and Q for odd k, with alternating signs
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
    }
    let (s, c) = x.sin_cos();
    // omega = x - pi/4 - order*pi/2
    let (cos_w, sin_w) = if order == 0 {
        ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
    } else {
        ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
    };
    (2.0 / (PI * x)).sqrt() * (p * cos_w - q * sin_w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hankel_and_miller_agree_on_overlap() {
        for &x in &[25.0, 30.0, 40.0] {
            assert!((hankel(0, x) - miller(0, x)).abs() < 1e-15);
            assert!((hankel(1, x) - miller(1, x)).abs() < 1e-15);
        }
    }

    #[test]
    fn series_and_miller_agree_near_one() {
        for n in 0..6 {
            let d = (power_series(n, 1.0) - miller(n, 1.0)).abs();
            assert!(d < 2e-16, "n={n} diff={d:e}");
        }
    }
}
