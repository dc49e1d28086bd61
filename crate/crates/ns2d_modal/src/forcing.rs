use crate::{NsError, Result};
use euler2d_modal::{ModalField, ModalSample};
use num_complex::Complex64;
use specfun::kummer_phi;

/// Radial force F r^{n+1} e^{−μ²r²} e^{inφ} with time weight y².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NsForcing {
    pub n: u32,
    pub amplitude: f64,
    pub mu: f64,
    pub nu: f64,
}

fn check_r(r: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(NsError::Domain(format!("r must be finite and >= 0, got {r}")));
    }
    Ok(())
}

pub(crate) fn check_t(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(NsError::Domain(format!("t must be finite and >= 0, got {t}")));
    }
    Ok(())
}

fn scaled_pow(coef: f64, r: f64, k: i32) -> f64 {
    if coef == 0.0 {
        0.0
    } else {
        coef * r.powi(k)
    }
}

impl NsForcing {
    pub fn new(n: u32, amplitude: f64, mu: f64, nu: f64) -> Result<Self> {
        if n == 0 {
            return Err(NsError::Forcing("mode n must be >= 1".into()));
        }
        for (name, v) in [("F", amplitude), ("mu", mu)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(NsError::Forcing(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(NsError::Forcing(format!(
                "nu must be positive (the inviscid case is a separate model), got {nu}"
            )));
        }
        Ok(Self { n, amplitude, mu, nu })
    }

    /// True when F ≤ 1/n.
    pub fn convergence_regime(&self) -> bool {
        self.amplitude * self.n as f64 <= 1.0
    }

    pub fn force_profile(&self, r: f64) -> f64 {
        self.amplitude * r.powi(self.n as i32 + 1) * (-(self.mu * r).powi(2)).exp()
    }

    /// Time weight y² of the force at time τ, for the force clock `t`.
    pub fn time_weight(&self, t: f64, tau: f64) -> f64 {
        let y = 1.0 / (4.0 * self.mu * self.mu * self.nu * (t - tau) + 1.0);
        y * y
    }

    /// (f_r, f_φ) at time τ on the force clock `t`.
    pub fn force(&self, r: f64, phi: f64, t: f64, tau: f64) -> (Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, self.n as f64 * phi);
        (
            e * (self.force_profile(r) * self.time_weight(t, tau)),
            Complex64::new(0.0, 0.0),
        )
    }

    /// D = 4μ²νt + 1.
    pub fn attenuation(&self, t: f64) -> f64 {
        4.0 * self.mu * self.mu * self.nu * t + 1.0
    }
}

/// Φ(a, c; −μ²r²) − Φ(a, c; −μ²r²/D)/D^p with D = 4μ²νt + 1.
///
/// Vanishes identically at t = 0.
pub fn bracket(forcing: &NsForcing, a: u32, c: u32, p: i32, r: f64, t: f64) -> Result<f64> {
    let d = forcing.attenuation(t);
    let x = -(forcing.mu * r).powi(2);
    let (a, c) = (a as f64, c as f64);
    Ok(kummer_phi(a, c, x)? - kummer_phi(a, c, x / d)? / d.powi(p))
}

/// Ascending inner Hankel transform ∫_0^∞ f_r(r̃) J_n(r̃ρ) dr̃ of the force
/// profile, times a given time weight.
pub fn ns_inner_hankel(n: u32, amplitude: f64, mu: f64, rho: f64, tau_weight: f64) -> f64 {
    let two_mu2 = 2.0 * mu * mu;
    amplitude * tau_weight * rho.powi(n as i32) / two_mu2.powi(n as i32 + 1)
        * (-rho * rho / (4.0 * mu * mu)).exp()
}

/// (R_{1,n−1,r}, R_{1,n+1,r}) at (r, t).
pub fn ns_profiles_r1(f: &NsForcing, r: f64, t: f64) -> Result<(f64, f64)> {
    check_r(r)?;
    check_t(t)?;
    let n = f.n;
    let nf = n as f64;
    let (fa, mu, nu) = (f.amplitude, f.mu, f.nu);
    let minus = fa * r.powi(n as i32 - 1) / (8.0 * mu.powi(4) * nu * (nf + 1.0))
        * bracket(f, n + 1, n + 2, n as i32 + 1, r, t)?;
    let plus = fa * r.powi(n as i32 + 1) / (8.0 * mu * mu * nu * (nf + 1.0) * (nf + 2.0))
        * bracket(f, n + 1, n + 3, n as i32 + 2, r, t)?;
    Ok((minus, plus))
}

/// Radial derivatives of `ns_profiles_r1`.
pub fn ns_profile_derivatives(f: &NsForcing, r: f64, t: f64) -> Result<(f64, f64)> {
    check_r(r)?;
    check_t(t)?;
    let n = f.n;
    let ni = n as i32;
    let nf = n as f64;
    let (fa, mu, nu) = (f.amplitude, f.mu, f.nu);
    let b_m = bracket(f, n + 1, n + 2, ni + 1, r, t)?;
    let b_m2 = bracket(f, n + 2, n + 3, ni + 2, r, t)?;
    let b_p = bracket(f, n + 1, n + 3, ni + 2, r, t)?;
    let b_p2 = bracket(f, n + 2, n + 4, ni + 3, r, t)?;
    let d_minus = scaled_pow(fa * (nf - 1.0) / (8.0 * mu.powi(4) * nu * (nf + 1.0)) * b_m, r, ni - 2)
        - fa * r.powi(ni) / (4.0 * mu * mu * nu * (nf + 2.0)) * b_m2;
    let d_plus = fa * r.powi(ni) / (8.0 * mu * mu * nu * (nf + 2.0)) * b_p
        - fa * r.powi(ni + 2) / (4.0 * nu * (nf + 2.0) * (nf + 3.0)) * b_p2;
    Ok((d_minus, d_plus))
}

pub fn ns_u1(f: &NsForcing, r: f64, phi: f64, t: f64) -> Result<ModalSample> {
    let (rm, rp) = ns_profiles_r1(f, r, t)?;
    Ok(ModalField::from_profiles(f.n, rm, rp, phi, 1.0))
}

/// Correction-force profiles at one (r, t), in every printed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NsCorrectionForce {
    /// T_{2,2n,r}, product form.
    pub t_r: f64,
    /// T_{2,2n,r}, expanded four-term form.
    pub t_r_expanded: f64,
    /// T_{2,2n,φ}, product form.
    pub t_phi: f64,
    /// T_{2,2n,φ,φ}, product form.
    pub t_phiphi: f64,
    /// T_{2,2n,φ,φ}, expanded form.
    pub t_phiphi_expanded: f64,
    /// T_{2,2n,φ,r} = 2n·T_{2,2n,r}, printed form.
    pub t_phir: f64,
}

/// All correction-force profiles at (r, t). The r = 0 limit is 0 for n ≥ 1.
pub fn ns_correction_force(f: &NsForcing, r: f64, t: f64) -> Result<NsCorrectionForce> {
    check_r(r)?;
    check_t(t)?;
    let n = f.n;
    let ni = n as i32;
    let nf = n as f64;
    let (fa, mu, nu) = (f.amplitude, f.mu, f.nu);
    let d = f.attenuation(t);
    let x = -(mu * r).powi(2);
    let xd = x / d;
    let phi = |a: u32, c: u32, x: f64| kummer_phi(a as f64, c as f64, x);

    // Φ values at both arguments
    let p12 = (phi(n + 1, n + 2, x)?, phi(n + 1, n + 2, xd)?);
    let p13 = (phi(n + 1, n + 3, x)?, phi(n + 1, n + 3, xd)?);
    let p02 = (phi(n, n + 2, x)?, phi(n, n + 2, xd)?);
    let p23 = (phi(n + 2, n + 3, x)?, phi(n + 2, n + 3, xd)?);
    let p34 = (phi(n + 3, n + 4, x)?, phi(n + 3, n + 4, xd)?);
    let br = |p: (f64, f64), k: i32| p.0 - p.1 / d.powi(k);

    let c = fa * fa / (16.0 * mu.powi(6) * nu * nu);
    let c2 = fa * fa / (8.0 * mu.powi(4) * nu * nu);
    let r_lo = r.powi(2 * ni - 1);
    let r_hi = r.powi(2 * ni + 1);

    let b12 = br(p12, ni + 1);
    let b13 = br(p13, ni + 2);
    let t_r = -c * r_lo / ((nf + 1.0).powi(2) * (nf + 2.0)) * b12 * b13;
    let t_r_expanded = -c * r_lo / ((nf + 1.0).powi(2) * (nf + 2.0))
        * (p12.0 * p13.0 - p12.0 * p13.1 / d.powi(ni + 2) - p12.1 * p13.0 / d.powi(ni + 1)
            + p12.1 * p13.1 / d.powi(2 * ni + 3));

    let b02 = br(p02, ni + 1);
    let b23 = br(p23, ni + 2);
    let t_phi = -c * r_lo / ((nf + 1.0) * (nf + 2.0)) * b02 * b23
        + c * nf * r_lo / ((nf + 1.0).powi(2) * (nf + 2.0)) * b12 * b13;

    let b34 = br(p34, ni + 3);
    let k1 = -c2 * nf * r_hi / ((nf + 1.0) * (nf + 2.0).powi(2));
    let k2 = c2 * r_hi / ((nf + 1.0) * (nf + 3.0));
    let t_phiphi = k1 * b13 * b23 + k2 * b02 * b34;
    let t_phiphi_expanded = k1
        * (p13.0 * p23.0 - p13.0 * p23.1 / d.powi(ni + 2) - p13.1 * p23.0 / d.powi(ni + 2)
            + p13.1 * p23.1 / d.powi(2 * ni + 4))
        + k2 * (p02.0 * p34.0 - p02.0 * p34.1 / d.powi(ni + 3) - p02.1 * p34.0 / d.powi(ni + 1)
            + p02.1 * p34.1 / d.powi(2 * ni + 4));

    let t_phir = -fa * fa * nf * r_lo / (8.0 * mu.powi(6) * nu * nu * (nf + 1.0).powi(2) * (nf + 2.0))
        * b12
        * b13;

    Ok(NsCorrectionForce {
        t_r,
        t_r_expanded,
        t_phi,
        t_phiphi,
        t_phiphi_expanded,
        t_phir,
    })
}
