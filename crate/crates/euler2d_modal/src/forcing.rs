use crate::profiles::{modal_radial_profiles, modal_tangential_profiles, ProfileQuadrature};
use crate::{EulerError, ModalField, ModalSample, Result};
use num_complex::Complex64;
use specfun::{lower_gamma_scaled_int, upper_gamma_int};

const SERIES_CAP: usize = 500;
/// Below μr = 2 the plus bracket is summed as a power series; its two
/// closed-form terms cancel to leading order near the origin.
const PLUS_BRACKET_SERIES_MAX: f64 = 2.0;
/// Below σt = 0.5 the second time factor is summed as a series for the same reason.
const TIME_SERIES_MAX: f64 = 0.5;

/// Radial force F r^{n+1} e^{−μr} e^{inφ} e^{−σt}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerForcing {
    pub n: u32,
    pub amplitude: f64,
    pub mu: f64,
    pub sigma: f64,
}

fn check_r(r: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(EulerError::Domain(format!("r must be finite and >= 0, got {r}")));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(EulerError::Domain(format!("t must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// coef · r^k with the convention 0 · r^k = 0 even where r^k is infinite.
fn scaled_pow(coef: f64, r: f64, k: i32) -> f64 {
    if coef == 0.0 {
        0.0
    } else {
        coef * r.powi(k)
    }
}

impl EulerForcing {
    pub fn new(n: u32, amplitude: f64, mu: f64, sigma: f64) -> Result<Self> {
        if n == 0 {
            return Err(EulerError::Forcing("mode n must be >= 1".into()));
        }
        for (name, v) in [("F", amplitude), ("mu", mu), ("sigma", sigma)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(EulerError::Forcing(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { n, amplitude, mu, sigma })
    }

    /// True when F ≤ 1/n, the regime in which the corrections stay small.
    pub fn convergence_regime(&self) -> bool {
        self.amplitude * self.n as f64 <= 1.0
    }

    pub fn force_profile(&self, r: f64) -> f64 {
        self.amplitude * r.powi(self.n as i32 + 1) * (-self.mu * r).exp()
    }

    /// (f_r, f_φ) of the applied force.
    pub fn force(&self, r: f64, phi: f64, t: f64) -> (Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, self.n as f64 * phi);
        (e * (self.force_profile(r) * (-self.sigma * t).exp()), Complex64::new(0.0, 0.0))
    }

    /// ∫_0^t e^{−στ} dτ = γ(1, σt)/σ.
    pub fn u1_time(&self, t: f64) -> f64 {
        -(-self.sigma * t).exp_m1() / self.sigma
    }

    /// Time factor of the correction force, the square of `u1_time`.
    pub fn correction_time(&self, t: f64) -> f64 {
        self.u1_time(t).powi(2)
    }

    /// ∫_0^t u1_time² = σ^{−2}[t − 2γ(1,σt)/σ + γ(1,2σt)/(2σ)].
    pub fn u2_time(&self, t: f64) -> f64 {
        let s = self.sigma;
        let y = s * t;
        if y < TIME_SERIES_MAX {
            // (1 − e^{−y})² = Σ_{k≥2} (−1)^k (2^k − 2) y^k / k!, integrated termwise
            let mut fact = 1.0;
            let mut ypow = y;
            let mut sum = 0.0;
            for k in 1..60u32 {
                fact *= k as f64;
                ypow *= y;
                if k < 2 {
                    continue;
                }
                let c = (2f64.powi(k as i32) - 2.0) / (fact * (k as f64 + 1.0));
                let term = if k % 2 == 0 { c * ypow } else { -c * ypow };
                sum += term;
                if term.abs() < 1e-18 * sum.abs() {
                    break;
                }
            }
            sum / (s * s * s)
        } else {
            let g1 = -(-y).exp_m1();
            let g2 = -(-2.0 * y).exp_m1();
            (t - 2.0 * g1 / s + g2 / (2.0 * s)) / (s * s)
        }
    }

    /// (R₋, R₊) = (F r^{n−1} Γ(2, μr)/μ², F γ(2n+2, μr)/(r^{n+1} μ^{2n+2})).
    pub fn profiles(&self, r: f64) -> Result<(f64, f64)> {
        check_r(r)?;
        let n = self.n as i32;
        let (f, mu) = (self.amplitude, self.mu);
        let x = mu * r;
        let minus = f * r.powi(n - 1) * upper_gamma_int(2, x)? / (mu * mu);
        let plus = f * r.powi(n + 1) * lower_gamma_scaled_int(2 * self.n + 2, x)?;
        Ok((minus, plus))
    }

    /// Radial derivatives of `profiles`.
    pub fn profile_derivatives(&self, r: f64) -> Result<(f64, f64)> {
        check_r(r)?;
        let n = self.n as i32;
        let (f, mu) = (self.amplitude, self.mu);
        let x = mu * r;
        let rn_ex = r.powi(n) * (-x).exp();
        let g2 = upper_gamma_int(2, x)?;
        let s = lower_gamma_scaled_int(2 * self.n + 2, x)?;
        let d_minus = f * (scaled_pow((n - 1) as f64 * g2 / (mu * mu), r, n - 2) - rn_ex);
        let d_plus = f * (-(n + 1) as f64 * r.powi(n) * s + rn_ex);
        Ok((d_minus, d_plus))
    }

    /// Shared building blocks of the correction profiles:
    /// (r^{2n−1} e^{−μr} Γ(2,μr)/μ², r^{2n−1} s Γ(2,μr)/μ², r^{2n+1} s e^{−μr})
    /// with s = γ(2n+2, μr)/(μr)^{2n+2}.
    fn correction_terms(&self, r: f64) -> Result<(f64, f64, f64)> {
        check_r(r)?;
        let n = self.n as i32;
        let mu = self.mu;
        let x = mu * r;
        let g2 = upper_gamma_int(2, x)?;
        let s = lower_gamma_scaled_int(2 * self.n + 2, x)?;
        let ex = (-x).exp();
        let p = r.powi(2 * n - 1) / (mu * mu);
        Ok((p * ex * g2, p * s * g2, r.powi(2 * n + 1) * s * ex))
    }

    /// (T_{2,2n−1,r}, T_{2,2n+1,r}): the two shifted-mode parts of the
    /// quadratic term u₁·∇u₁.
    pub fn correction_components(&self, r: f64) -> Result<(f64, f64)> {
        let (a, b, c) = self.correction_terms(r)?;
        let f2 = self.amplitude * self.amplitude;
        let n = self.n as f64;
        let minus = f2 * (-a + 2.0 * (n - 1.0) * b - c);
        let plus = f2 * (a - 2.0 * (n + 1.0) * b + c);
        Ok((minus, plus))
    }

    /// (T_{2,2n,r}, T_{2,2n,φ}), the sum and difference of `correction_components`
    /// in closed form.
    pub fn correction_profiles(&self, r: f64) -> Result<(f64, f64)> {
        let (a, b, c) = self.correction_terms(r)?;
        let f2 = self.amplitude * self.amplitude;
        let n = self.n as f64;
        let t_r = -4.0 * f2 * b;
        let t_phi = -f2 * (2.0 * a - 4.0 * n * b + 2.0 * c);
        Ok((t_r, t_phi))
    }

    /// Closed-form correction brackets (A, B) with
    /// u₂*_r = (A + B) e^{i2nφ} u₂t and u₂*_φ = i(A − B) e^{i2nφ} u₂t.
    pub fn brackets(&self, r: f64) -> Result<(f64, f64)> {
        check_r(r)?;
        Ok((self.minus_bracket(r)?, self.plus_bracket(r)?))
    }

    fn minus_bracket(&self, r: f64) -> Result<f64> {
        let n = self.n;
        let nf = n as f64;
        let mu = self.mu;
        let y = 2.0 * mu * r;
        // g_l = Γ(l+2, y)/((2n+2)_{l+1} 2^{l+1}), h_l = Γ(l+3, y)/((2n+2)_{l+1} 2^{l+3}),
        // e_l = y^{l+1} e^{−y}/((2n+2)_{l+1} 2^{l+1}); all from l = −1 upward.
        let ey = (-y).exp();
        let mut g = ey;
        let mut e = ey;
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        let mut converged = false;
        for l in 0..SERIES_CAP {
            let lf = l as f64;
            let d = 2.0 * (2.0 * nf + 2.0 + lf);
            g = (g * (lf + 1.0) + e * y) / d;
            e *= y / d;
            let h = ((lf + 2.0) * g + y * e) / 4.0;
            s1 += g;
            s2 += h;
            let settled = g <= 1e-16 * s1 && h <= 1e-16 * s2;
            if (g == 0.0 && h == 0.0) || (settled && lf > 0.5 * y) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(EulerError::Series { terms: SERIES_CAP });
        }
        let g1 = upper_gamma_int(1, y)?;
        let g2 = upper_gamma_int(2, y)?;
        let inner = (-g1 / 2.0 - g2 / 4.0 + nf * s1 - s2) / (mu * mu);
        let f2 = self.amplitude * self.amplitude;
        Ok(f2 * nf * nf * r.powi(2 * n as i32 - 1) / 4.0 * inner)
    }

    fn plus_bracket(&self, r: f64) -> Result<f64> {
        let n = self.n;
        let nf = n as f64;
        let mu = self.mu;
        let x = mu * r;
        let f2 = self.amplitude * self.amplitude;
        let lead = f2 * nf.powi(3) * (2.0 * nf + 1.0) * r.powi(2 * n as i32 - 1) / (4.0 * mu * mu);
        let bracket = if x < PLUS_BRACKET_SERIES_MAX {
            // e^{−2x} Σ_{k≥1} [2/(2n)_{k+1} − 4·2^k/(4n)_{k+1}] x^k; the k = 0 terms cancel
            let mut p = 1.0 / (2.0 * nf);
            let mut q = 1.0 / (4.0 * nf);
            let mut sum = 0.0;
            for k in 1..200u32 {
                let kf = k as f64;
                p *= x / (2.0 * nf + kf);
                q *= 2.0 * x / (4.0 * nf + kf);
                let term = 2.0 * p - 4.0 * q;
                sum += term;
                if p.abs() + q.abs() < 1e-18 * sum.abs() || (p == 0.0 && q == 0.0) {
                    break;
                }
            }
            (-2.0 * x).exp() * sum
        } else {
            2.0 * lower_gamma_scaled_int(2 * n, x)? * (-x).exp()
                - 4.0 * lower_gamma_scaled_int(4 * n, 2.0 * x)?
        };
        Ok(lead * bracket)
    }

    /// The same brackets assembled from the generic profile integrals of the
    /// correction force (mode 2n), for cross-checking the closed forms.
    pub fn brackets_by_quadrature(&self, r: f64, quad: &ProfileQuadrature) -> Result<(f64, f64)> {
        let m = 2 * self.n;
        let nf = self.n as f64;
        let c = nf * nf / 4.0;
        let f_r = |s: f64| c * self.correction_profiles(s).map(|p| p.0).unwrap_or(f64::NAN);
        let f_phi = |s: f64| c * self.correction_profiles(s).map(|p| p.1).unwrap_or(f64::NAN);
        let (rm, rp) = modal_radial_profiles(m, f_r, r, quad)?;
        let (pm, pp) = modal_tangential_profiles(m, f_phi, r, quad)?;
        // the tangential force is i·c·T_φ, so −(i/2)·(i·profile) = profile/2
        Ok((nf * rm + 0.5 * pm, nf * rp + 0.5 * pp))
    }
}

/// Correction-force profiles at one radius and the time factor at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionForce {
    pub n: u32,
    pub t_r: f64,
    pub t_phi: f64,
    pub time: f64,
}

impl CorrectionForce {
    /// (f₂*_r, f₂*_φ) = (n²/4)(T_r, i T_φ) e^{i2nφ} T_{2n}(t).
    pub fn f2star(&self, phi: f64) -> (Complex64, Complex64) {
        let nf = self.n as f64;
        let e = Complex64::from_polar(nf * nf / 4.0 * self.time, 2.0 * nf * phi);
        (e * self.t_r, e * Complex64::new(0.0, self.t_phi))
    }
}

pub fn euler_u1(forcing: &EulerForcing, r: f64, phi: f64, t: f64) -> Result<ModalSample> {
    check_t(t)?;
    let (rm, rp) = forcing.profiles(r)?;
    Ok(ModalField::from_profiles(forcing.n, rm, rp, phi, forcing.u1_time(t)))
}

pub fn euler_correction_force(forcing: &EulerForcing, r: f64, t: f64) -> Result<CorrectionForce> {
    check_t(t)?;
    let (t_r, t_phi) = forcing.correction_profiles(r)?;
    Ok(CorrectionForce {
        n: forcing.n,
        t_r,
        t_phi,
        time: forcing.correction_time(t),
    })
}

pub fn euler_u2star(forcing: &EulerForcing, r: f64, phi: f64, t: f64) -> Result<ModalSample> {
    check_t(t)?;
    let (a, b) = forcing.brackets(r)?;
    let nf = forcing.n as f64;
    // a mode-2n field with profiles A/n and B/n has u_r = A + B and u_φ = i(A − B)
    Ok(ModalField::from_profiles(2 * forcing.n, a / nf, b / nf, phi, forcing.u2_time(t)))
}

pub fn euler_u2(forcing: &EulerForcing, r: f64, phi: f64, t: f64) -> Result<ModalSample> {
    let u1 = euler_u1(forcing, r, phi, t)?;
    let u2s = euler_u2star(forcing, r, phi, t)?;
    Ok(u1.sub(&u2s))
}
