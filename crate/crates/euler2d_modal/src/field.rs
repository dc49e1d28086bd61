use num_complex::Complex64;

/// Velocity at one point, in polar and Cartesian components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalSample {
    pub ur: Complex64,
    pub uphi: Complex64,
    pub u1: Complex64,
    pub u2: Complex64,
}

impl ModalSample {
    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { ur: z, uphi: z, u1: z, u2: z }
    }

    /// Rotate polar components into Cartesian ones. Works for complex
    /// amplitudes because the rotation is real.
    pub fn from_polar(ur: Complex64, uphi: Complex64, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            ur,
            uphi,
            u1: ur * c - uphi * s,
            u2: ur * s + uphi * c,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            ur: self.ur - other.ur,
            uphi: self.uphi - other.uphi,
            u1: self.u1 - other.u1,
            u2: self.u2 - other.u2,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            ur: self.ur + other.ur,
            uphi: self.uphi + other.uphi,
            u1: self.u1 + other.u1,
            u2: self.u2 + other.u2,
        }
    }

    /// Euclidean length of the real part of the field.
    pub fn real_magnitude(&self) -> f64 {
        self.u1.re.hypot(self.u2.re)
    }

    /// Length of the complex vector, sqrt(|u1|² + |u2|²).
    pub fn magnitude(&self) -> f64 {
        self.u1.norm().hypot(self.u2.norm())
    }
}

type Profile<'a> = Box<dyn Fn(f64) -> f64 + 'a>;

/// A single-mode field (n/2)[R₋ e^{i(n−1)φ} ± R₊ e^{i(n+1)φ}] T(t).
pub struct ModalField<'a> {
    pub n: u32,
    pub profile_minus: Profile<'a>,
    pub profile_plus: Profile<'a>,
    pub time_factor: Profile<'a>,
}

impl<'a> ModalField<'a> {
    pub fn new(
        n: u32,
        profile_minus: impl Fn(f64) -> f64 + 'a,
        profile_plus: impl Fn(f64) -> f64 + 'a,
        time_factor: impl Fn(f64) -> f64 + 'a,
    ) -> Self {
        Self {
            n,
            profile_minus: Box::new(profile_minus),
            profile_plus: Box::new(profile_plus),
            time_factor: Box::new(time_factor),
        }
    }

    /// u_r = (n/2)(R₋+R₊) e^{inφ} T, u_φ = (in/2)(R₋−R₊) e^{inφ} T.
    pub fn sample(&self, r: f64, phi: f64, t: f64) -> ModalSample {
        let time = (self.time_factor)(t);
        if time == 0.0 || self.n == 0 {
            return ModalSample::zero();
        }
        let rm = (self.profile_minus)(r);
        let rp = (self.profile_plus)(r);
        Self::from_profiles(self.n, rm, rp, phi, time)
    }

    /// Same as `sample` but with the profile values already known.
    pub fn from_profiles(n: u32, rm: f64, rp: f64, phi: f64, time: f64) -> ModalSample {
        let half_n = 0.5 * n as f64;
        let e = Complex64::from_polar(1.0, n as f64 * phi);
        let ur = e * (half_n * (rm + rp) * time);
        let uphi = e * Complex64::new(0.0, half_n * (rm - rp) * time);
        ModalSample::from_polar(ur, uphi, phi)
    }

    /// Cartesian components from the shifted-mode form, independent of the
    /// polar rotation in `sample`.
    pub fn cartesian(&self, r: f64, phi: f64, t: f64) -> (Complex64, Complex64) {
        let time = (self.time_factor)(t);
        let n = self.n as f64;
        let rm = (self.profile_minus)(r);
        let rp = (self.profile_plus)(r);
        let em = Complex64::from_polar(1.0, (n - 1.0) * phi);
        let ep = Complex64::from_polar(1.0, (n + 1.0) * phi);
        let i = Complex64::new(0.0, 1.0);
        let u1 = (em * rm + ep * rp) * (0.5 * n * time);
        let u2 = i * (em * rm - ep * rp) * (0.5 * n * time);
        (u1, u2)
    }
}
