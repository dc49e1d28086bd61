//! Runs of the two modal backends. Both share the output layout and the
//! generic checks; each adds the checks specific to its closed forms.

use crate::config::{ModalLayout, COMPARE_R_MAX, DOTTED_ANGLES, DOTTED_RADII};
use crate::output::{write_file, Table};
use crate::{RunData, RunError};
use euler2d_modal::{euler_u1, euler_u2star, EulerForcing, ModalField, ModalSample, ProfileQuadrature};
use ns2d_modal::{
    ns_correction_force, ns_profile_derivatives, ns_profiles_r1, ns_u1, ns_u1_clocked, Kernel, NsForcing, TripleEngine,
};
use quadrature::PrecisionPolicy;
use rayon::prelude::*;
use std::collections::HashMap;
use std::path::Path;
use std::sync::RwLock;
use std::time::Instant;
use verify::{
    check_convergence_ratio, check_divergence, check_initial_zero, check_refinement, check_residual, modal_cartesian,
    polar_points, CheckReport, Model, ResidualInput,
};

trait ModalBackend: Sync {
    fn regime(&self) -> bool;
    fn u1(&self, r: f64, phi: f64, t: f64) -> Result<ModalSample, RunError>;
    fn u2star(&self, r: f64, phi: f64, t: f64) -> Result<ModalSample, RunError>;
}

struct Euler<'a>(&'a EulerForcing);

impl ModalBackend for Euler<'_> {
    fn regime(&self) -> bool {
        self.0.convergence_regime()
    }
    fn u1(&self, r: f64, phi: f64, t: f64) -> Result<ModalSample, RunError> {
        Ok(euler_u1(self.0, r, phi, t)?)
    }
    fn u2star(&self, r: f64, phi: f64, t: f64) -> Result<ModalSample, RunError> {
        Ok(euler_u2star(self.0, r, phi, t)?)
    }
}

/// Viscous backend with one triple-integral engine per time and a cache of
/// u₂* profiles, which do not depend on φ.
struct Ns<'a> {
    forcing: &'a NsForcing,
    engines: Vec<(f64, TripleEngine)>,
    cache: RwLock<HashMap<(u64, u64), (f64, f64)>>,
}

impl<'a> Ns<'a> {
    fn new(forcing: &'a NsForcing, times: &[f64], policy: &PrecisionPolicy) -> Result<Self, RunError> {
        let mut engines: Vec<(f64, TripleEngine)> = Vec::new();
        for &t in times {
            if t > 0.0 && !engines.iter().any(|(s, _)| *s == t) {
                engines.push((t, TripleEngine::new(forcing, t, policy, &[Kernel::PhiPhi])?));
            }
        }
        Ok(Self { forcing, engines, cache: RwLock::new(HashMap::new()) })
    }

    fn engine(&self, t: f64) -> Option<&TripleEngine> {
        self.engines.iter().find(|(s, _)| *s == t).map(|(_, e)| e)
    }

    fn profiles(&self, r: f64, t: f64) -> Result<(f64, f64), RunError> {
        let key = (t.to_bits(), r.to_bits());
        if let Some(p) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(*p);
        }
        let engine = self
            .engine(t)
            .ok_or_else(|| RunError::Io { path: "engine".into(), message: format!("no engine built for t = {t}") })?;
        let p = engine.u2star_profiles(r)?;
        self.cache.write().expect("cache lock").insert(key, p);
        Ok(p)
    }

    /// Fill the cache for many (r, t) pairs, in parallel over radii.
    fn prefill(&self, pairs: &[(f64, f64)]) -> Result<(), RunError> {
        let computed: Vec<((u64, u64), (f64, f64))> = pairs
            .par_iter()
            .filter(|(_, t)| *t > 0.0)
            .map(|&(r, t)| {
                let e = self.engine(t).expect("engine for every prefilled time");
                Ok(((t.to_bits(), r.to_bits()), e.u2star_profiles(r)?))
            })
            .collect::<Result<_, RunError>>()?;
        self.cache.write().expect("cache lock").extend(computed);
        Ok(())
    }
}

impl ModalBackend for Ns<'_> {
    fn regime(&self) -> bool {
        self.forcing.convergence_regime()
    }
    fn u1(&self, r: f64, phi: f64, t: f64) -> Result<ModalSample, RunError> {
        Ok(ns_u1(self.forcing, r, phi, t)?)
    }
    fn u2star(&self, r: f64, phi: f64, t: f64) -> Result<ModalSample, RunError> {
        if t == 0.0 {
            return Ok(ModalSample::zero());
        }
        let (rm, rp) = self.profiles(r, t)?;
        Ok(ModalField::from_profiles(2 * self.forcing.n, rm, rp, phi, 1.0))
    }
}

fn sample_pairs(layout: &ModalLayout) -> Vec<(f64, f64)> {
    let mut pairs = Vec::new();
    for &t in &layout.t {
        pairs.extend(layout.r.iter().map(|&r| (r, t)));
    }
    pairs.extend(layout.compare_r.iter().map(|&r| (r, layout.display_time)));
    pairs.extend(DOTTED_RADII.iter().map(|&r| (r, layout.display_time)));
    pairs
}

/// Writes the three CSVs and runs the checks both modal models share.
fn common(name: &str, backend: &dyn ModalBackend, layout: &ModalLayout, dir: &Path, data: &mut RunData) -> Result<(), RunError> {
    let started = Instant::now();
    let (mut u1_mags, mut u2_mags) = (Vec::new(), Vec::new());

    let mut field = Table::new(&["r", "phi", "t", "u_r_re", "u_r_im", "u_phi_re", "u_phi_im", "u1_mag", "u2star_mag"]);
    for &t in &layout.t {
        for &r in &layout.r {
            for &phi in &layout.phi {
                let u1 = backend.u1(r, phi, t)?;
                let us = backend.u2star(r, phi, t)?;
                let u2 = u1.sub(&us);
                let (m1, ms) = (u1.real_magnitude(), us.real_magnitude());
                field.row(&[r, phi, t, u2.ur.re, u2.ur.im, u2.uphi.re, u2.uphi.im, m1, ms]);
                u1_mags.push(m1);
                u2_mags.push(ms);
            }
        }
    }
    data.files.push(write_file(dir, &format!("field_{name}.csv"), &field.into_bytes())?);

    let t = layout.display_time;
    let mut compare = Table::new(&["r", "phi", "t", "u1_mag", "u2star_mag"]);
    for &phi in &layout.compare_phi {
        for &r in &layout.compare_r {
            let (m1, ms) = (backend.u1(r, phi, t)?.real_magnitude(), backend.u2star(r, phi, t)?.real_magnitude());
            compare.row(&[r, phi, t, m1, ms]);
            u1_mags.push(m1);
            u2_mags.push(ms);
        }
    }
    data.files.push(write_file(dir, &format!("compare_{name}.csv"), &compare.into_bytes())?);

    let mut dotted = Table::new(&["r", "phi", "t", "x", "y", "u_x", "u_y"]);
    for &r in &DOTTED_RADII {
        for k in 0..DOTTED_ANGLES {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / DOTTED_ANGLES as f64;
            let u2 = backend.u1(r, phi, t)?.sub(&backend.u2star(r, phi, t)?);
            let [ux, uy] = modal_cartesian(&u2);
            dotted.row(&[r, phi, t, r * phi.cos(), r * phi.sin(), ux, uy]);
        }
    }
    data.files.push(write_file(dir, &format!("dotted_{name}.csv"), &dotted.into_bytes())?);
    data.timings.insert("outputs_seconds".into(), started.elapsed().as_secs_f64());

    // the first iterate and the correction vanish identically at t = 0
    let mut at_zero = Vec::new();
    for &r in &layout.r {
        for &phi in &layout.phi {
            at_zero.push(backend.u1(r, phi, 0.0)?.magnitude());
            at_zero.push(backend.u2star(r, phi, 0.0)?.magnitude());
        }
    }
    data.checks.push(check_initial_zero(name, &at_zero));

    let pts = polar_points((0.5, 10.0, 8), (0.1, 6.0, 6));
    let u1 = |x: f64, y: f64| modal_cartesian(&backend.u1(x.hypot(y), y.atan2(x), t).expect("u1 on the check grid"));
    data.checks.push(check_divergence(name, &u1, &pts, 1e-4).with_grid("field", "u1").with_grid("t", t));
    let pts = polar_points((1.13, 5.93, 3), (0.3, 2.0, 2));
    let us = |x: f64, y: f64| modal_cartesian(&backend.u2star(x.hypot(y), y.atan2(x), t).expect("u2star on the check grid"));
    data.checks.push(check_divergence(name, &us, &pts, 1e-4).with_grid("field", "u2star").with_grid("t", t));

    let ratio = check_convergence_ratio(name, &u1_mags, &u2_mags, backend.regime())?
        .with_grid("r_max", COMPARE_R_MAX)
        .with_grid("t_max", layout.t.iter().cloned().fold(t, f64::max));
    data.convergence_ratios.insert("sup_u2star_over_sup_u1".into(), ratio.value());
    data.checks.push(ratio);
    Ok(())
}

pub(crate) fn run_euler(name: &str, f: &EulerForcing, layout: &ModalLayout, dir: &Path) -> Result<RunData, RunError> {
    let mut data = RunData::default();
    common(name, &Euler(f), layout, dir, &mut data)?;

    // closed-form correction brackets against their profile quadrature
    let q = ProfileQuadrature::default();
    let mut worst = 0.0f64;
    for &r in &[0.5, 2.0, 5.0, 12.0] {
        let (a, b) = f.brackets(r)?;
        let (qa, qb) = f.brackets_by_quadrature(r, &q)?;
        worst = worst.max((a - qa).abs() / qa.abs()).max((b - qb).abs() / qb.abs());
    }
    data.checks.push(CheckReport::at_most("bracket_oracle", name, worst, 1e-6).with_grid("radii", "[0.5, 2, 5, 12]"));

    let u = |x: f64, y: f64, t: f64| modal_cartesian(&euler_u1(f, x.hypot(y), y.atan2(x), t).expect("u1"));
    let force = |x: f64, y: f64, t: f64| {
        let phi = y.atan2(x);
        let (fr, fphi) = f.force(x.hypot(y), phi, t);
        modal_cartesian(&ModalSample::from_polar(fr, fphi, phi))
    };
    let pts = polar_points((0.5, 4.0, 4), (0.2, 5.0, 4));
    let input = ResidualInput {
        model: Model::Euler,
        u: &u,
        p: None,
        f: &force,
        convection: false,
        points: &pts,
        times: &[0.1, 0.3],
        threshold: 1e-4,
    };
    data.checks.push(check_residual(name, &input));
    Ok(data)
}

pub(crate) fn run_ns(
    name: &str,
    f: &NsForcing,
    layout: &ModalLayout,
    policy: &PrecisionPolicy,
    refinement_radii: &[f64],
    dir: &Path,
) -> Result<RunData, RunError> {
    let mut data = RunData::default();
    let started = Instant::now();
    let mut times = layout.t.clone();
    times.push(layout.display_time);
    let backend = Ns::new(f, &times, policy)?;
    backend.prefill(&sample_pairs(layout))?;
    data.timings.insert("triple_integrals_seconds".into(), started.elapsed().as_secs_f64());
    common(name, &backend, layout, dir, &mut data)?;
    let t = layout.display_time;

    let started = Instant::now();
    let engine = backend.engine(t).expect("display-time engine");
    let rep = engine.refinement(refinement_radii)?;
    data.tail_verification.insert("inner".into(), rep.inner_ok());
    data.tail_verification.insert("middle".into(), rep.middle_ok());
    data.tail_verification.insert("outer".into(), rep.outer_ok());
    data.checks.extend(check_refinement(name, &rep));
    data.timings.insert("refinement_seconds".into(), started.elapsed().as_secs_f64());

    // profile derivatives against fourth-order differences
    let d4 = |g: &dyn Fn(f64) -> f64, x: f64, h: f64| (g(x - 2.0 * h) - 8.0 * g(x - h) + 8.0 * g(x + h) - g(x + 2.0 * h)) / (12.0 * h);
    let mut worst = 0.0f64;
    for &r in &[0.3, 1.0, 2.2, 6.0] {
        let (dm, dp) = ns_profile_derivatives(f, r, t)?;
        let fm = d4(&|x| ns_profiles_r1(f, x, t).map(|p| p.0).unwrap_or(f64::NAN), r, 1e-3);
        let fp = d4(&|x| ns_profiles_r1(f, x, t).map(|p| p.1).unwrap_or(f64::NAN), r, 1e-3);
        let scale = dm.abs().max(dp.abs());
        worst = worst.max((dm - fm).abs() / scale).max((dp - fp).abs() / scale);
    }
    data.checks.push(CheckReport::at_most("profile_derivatives", name, worst, 1e-6));

    // product and expanded forms of the correction force
    let mut worst = 0.0f64;
    for &r in &[0.4, 1.5, 3.0] {
        let c = ns_correction_force(f, r, t)?;
        worst = worst
            .max((c.t_r_expanded - c.t_r).abs() / c.t_r.abs())
            .max((c.t_phiphi_expanded - c.t_phiphi).abs() / c.t_phiphi.abs());
    }
    data.checks.push(CheckReport::at_most("printed_forms", name, worst, 1e-12));

    // (r T_φ)' = T_φφ + 2n T_r
    let mut worst = 0.0f64;
    for &r in &[0.6, 1.7, 3.5] {
        let flux = d4(&|x| ns_correction_force(f, x, t).map(|c| c.t_phi * x).unwrap_or(f64::NAN), r, 1e-3);
        let c = ns_correction_force(f, r, t)?;
        let split = c.t_phiphi + 2.0 * f.n as f64 * c.t_r;
        worst = worst.max((flux - split).abs() / split.abs().max(c.t_phiphi.abs()));
    }
    data.checks.push(CheckReport::at_most("flux_split", name, worst, 1e-6));

    // the linear equation, with the force clock frozen at the display time
    let u = |x: f64, y: f64, s: f64| {
        let p = ns_u1_clocked(f, x.hypot(y), s, t, 801).expect("clocked u1");
        modal_cartesian(&p.sample(f.n, y.atan2(x)))
    };
    let force = |x: f64, y: f64, s: f64| {
        let phi = y.atan2(x);
        let (fr, fphi) = f.force(x.hypot(y), phi, t, s);
        modal_cartesian(&ModalSample::from_polar(fr, fphi, phi))
    };
    let pts = polar_points((0.4, 2.4, 3), (0.3, 2.5, 3));
    let input = ResidualInput {
        model: Model::Ns { nu: f.nu },
        u: &u,
        p: None,
        f: &force,
        convection: false,
        points: &pts,
        times: &[0.5 * t],
        threshold: 1e-4,
    };
    data.checks.push(check_residual(name, &input).with_grid("force_clock", t));
    Ok(data)
}
