//! First velocity correction u₂* from the triple integral
//!
//! X_∓(r) = ∫_0^t ∫_0^{A2} K(r̃, τ) ∫_0^{A1} e^{−νρ²(t−τ)} J_{2n∓1}(rρ) J_{2n}(r̃ρ) dρ dr̃ dτ
//!
//! with composite Simpson in every variable. For a fixed r the inner sums
//! over all (τ, r̃) nodes form one matrix product, so the engine keeps the
//! Bessel table J_{2n}(r̃_j ρ_i), the damping table e^{−νρ_i²(t−τ_k)} and
//! the kernel samples K(r̃_j, τ_k). At τ = t the inner integral is replaced
//! by its Weber–Schafheitlin value.

use crate::{ns_correction_force, ns_u1, NsError, NsForcing, Result};
use euler2d_modal::{ModalField, ModalSample};
use quadrature::{weber_schafheitlin, PrecisionPolicy, SimpsonRule};
use serde::{Deserialize, Serialize};
use specfun::bessel_jn;

/// Which correction-force profile sits in the middle integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kernel {
    /// T_{2,2n,φ,φ}; the only one that enters u₂*.
    PhiPhi,
    /// T_{2,2n,r}; its contributions cancel in u₂*.
    Radial,
    /// (T_{2,2n,φ} r̃)′ by finite differences, for the direct check.
    Flux,
}

/// X_− and X_+ for one kernel at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleValues {
    pub minus: f64,
    pub plus: f64,
}

/// Per-level self-check of the nested quadrature at a set of radii.
///
/// Differences are absolute and maximised over the radii, over the
/// (τ, r̃) nodes for the inner level and over the τ nodes for the middle
/// level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub radii: Vec<f64>,
    pub inner_difference: f64,
    pub inner_tol: f64,
    pub middle_difference: f64,
    pub middle_tol: f64,
    pub outer_difference: f64,
    pub outer_tol: f64,
    /// Largest per-radius |ΔX| / max(|X_−|, |X_+|) when the inner step is
    /// halved at a fixed limit. The inner refinement above keeps the step, so it cannot see
    /// aliasing of the J_{2n∓1}(rρ)J_{2n}(r̃ρ) product at large r. Reported
    /// only; it is not part of `verified`.
    pub resolution_relative: f64,
}

impl RefinementReport {
    pub fn inner_ok(&self) -> bool {
        self.inner_difference <= self.inner_tol
    }
    pub fn middle_ok(&self) -> bool {
        self.middle_difference <= self.middle_tol
    }
    pub fn outer_ok(&self) -> bool {
        self.outer_difference <= self.outer_tol
    }
    pub fn verified(&self) -> bool {
        self.inner_ok() && self.middle_ok() && self.outer_ok()
    }
}

/// Cached tables for the triple integrals of one (forcing, t, policy).
pub struct TripleEngine {
    forcing: NsForcing,
    t: f64,
    policy: PrecisionPolicy,
    rho: SimpsonRule,
    r_tilde: SimpsonRule,
    tau: SimpsonRule,
    /// n_τ × n_ρ, row k holds w_i e^{−νρ_i²(t−τ_k)}
    damping: Vec<f64>,
    /// n_r̃ × n_ρ, row j holds J_{2n}(r̃_j ρ_i)
    bessel: Vec<f64>,
    kernels: Vec<(Kernel, Vec<f64>)>,
}

/// Intermediate sums at one radius, for one order sign.
struct Levels {
    /// n_τ × n_r̃ inner integrals (last row is the analytic endpoint)
    inner: Vec<f64>,
}

const FLUX_STEP: f64 = 1e-3;

fn flux_kernel(f: &NsForcing, r: f64, tau: f64) -> Result<f64> {
    let g = |s: f64| -> Result<f64> { Ok(ns_correction_force(f, s, tau)?.t_phi * s) };
    let h = FLUX_STEP;
    if r < 2.0 * h {
        // one-sided second-order stencil next to the origin
        let a = g(r + h)?;
        let b = g(r + 2.0 * h)?;
        let c = g(r)?;
        return Ok((-3.0 * c + 4.0 * a - b) / (2.0 * h));
    }
    Ok((g(r - 2.0 * h)? - 8.0 * g(r - h)? + 8.0 * g(r + h)? - g(r + 2.0 * h)?) / (12.0 * h))
}

impl TripleEngine {
    pub fn new(
        forcing: &NsForcing,
        t: f64,
        policy: &PrecisionPolicy,
        kernels: &[Kernel],
    ) -> Result<Self> {
        policy.validate()?;
        if !(t > 0.0 && t.is_finite()) {
            return Err(NsError::Domain(format!("t must be positive and finite, got {t}")));
        }
        let rho = SimpsonRule::new(0.0, policy.inner_limit, policy.inner_panels)?;
        let r_tilde = SimpsonRule::new(0.0, policy.middle_limit, policy.middle_panels)?;
        let tau = SimpsonRule::new(0.0, t, policy.outer_panels)?;
        let n_rho = rho.len();

        let mut damping = vec![0.0; tau.len() * n_rho];
        for (k, &tk) in tau.nodes.iter().enumerate() {
            let s = t - tk;
            let row = &mut damping[k * n_rho..(k + 1) * n_rho];
            for (i, (&p, &w)) in rho.nodes.iter().zip(&rho.weights).enumerate() {
                row[i] = w * (-forcing.nu * p * p * s).exp();
            }
        }

        let order = 2 * forcing.n;
        let mut bessel = vec![0.0; r_tilde.len() * n_rho];
        for (j, &rt) in r_tilde.nodes.iter().enumerate() {
            let row = &mut bessel[j * n_rho..(j + 1) * n_rho];
            for (i, &p) in rho.nodes.iter().enumerate() {
                row[i] = bessel_jn(order, rt * p)?;
            }
        }

        let mut tables = Vec::new();
        for &kind in kernels {
            if tables.iter().any(|(k, _)| *k == kind) {
                continue;
            }
            let mut vals = vec![0.0; tau.len() * r_tilde.len()];
            for (k, &tk) in tau.nodes.iter().enumerate() {
                for (j, &rt) in r_tilde.nodes.iter().enumerate() {
                    vals[k * r_tilde.len() + j] = match kind {
                        Kernel::PhiPhi => ns_correction_force(forcing, rt, tk)?.t_phiphi,
                        Kernel::Radial => ns_correction_force(forcing, rt, tk)?.t_r,
                        Kernel::Flux => flux_kernel(forcing, rt, tk)?,
                    };
                }
            }
            tables.push((kind, vals));
        }

        Ok(Self {
            forcing: *forcing,
            t,
            policy: *policy,
            rho,
            r_tilde,
            tau,
            damping,
            bessel,
            kernels: tables,
        })
    }

    pub fn forcing(&self) -> &NsForcing {
        &self.forcing
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn policy(&self) -> &PrecisionPolicy {
        &self.policy
    }

    fn levels(&self, r: f64, order: u32) -> Result<Levels> {
        let n_rho = self.rho.len();
        let n_rt = self.r_tilde.len();
        let n_tau = self.tau.len();
        let mut jr = Vec::with_capacity(n_rho);
        for &p in &self.rho.nodes {
            jr.push(bessel_jn(order, r * p)?);
        }
        let mut a = self.damping.clone();
        for row in a.chunks_mut(n_rho) {
            for (v, j) in row.iter_mut().zip(&jr) {
                *v *= j;
            }
        }
        let mut inner = vec![0.0; n_tau * n_rt];
        // inner[k][j] = Σ_i a[k][i] · bessel[j][i]
        unsafe {
            matrixmultiply::dgemm(
                n_tau,
                n_rho,
                n_rt,
                1.0,
                a.as_ptr(),
                n_rho as isize,
                1,
                self.bessel.as_ptr(),
                1,
                n_rho as isize,
                0.0,
                inner.as_mut_ptr(),
                n_rt as isize,
                1,
            );
        }
        // endpoint τ = t: ∫_0^∞ J_{order}(rρ) J_{2n}(r̃ρ) dρ
        let last = (n_tau - 1) * n_rt;
        let two_n = 2 * self.forcing.n;
        for (j, &rt) in self.r_tilde.nodes.iter().enumerate() {
            inner[last + j] = if r == 0.0 || rt == 0.0 {
                0.0
            } else if order < two_n {
                weber_schafheitlin(two_n as f64, rt, r)
            } else {
                weber_schafheitlin(order as f64, r, rt)
            };
        }
        if let Some(bad) = inner.iter().position(|v| !v.is_finite()) {
            return Err(NsError::Quadrature(quadrature::QuadError::NonFiniteTriple {
                tau: self.tau.nodes[bad / n_rt],
                r_tilde: self.r_tilde.nodes[bad % n_rt],
                rho: f64::NAN,
                value: inner[bad],
            }));
        }
        Ok(Levels { inner })
    }

    fn table(&self, kind: Kernel) -> Result<&[f64]> {
        self.kernels
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, v)| v.as_slice())
            .ok_or_else(|| NsError::Domain(format!("kernel {kind:?} was not tabulated")))
    }

    fn middle(&self, levels: &Levels, kernel: &[f64]) -> Vec<f64> {
        let n_rt = self.r_tilde.len();
        levels
            .inner
            .chunks(n_rt)
            .zip(kernel.chunks(n_rt))
            .map(|(inner, kv)| {
                let mut acc = 0.0;
                for ((w, i), k) in self.r_tilde.weights.iter().zip(inner).zip(kv) {
                    acc += w * k * i;
                }
                acc
            })
            .collect()
    }

    /// Inner integrals at (τ_k, r̃_j), row-major in k, for J_{2n−1} and J_{2n+1}.
    pub fn inner_table(&self, r: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let two_n = 2 * self.forcing.n;
        Ok((
            self.levels(r, two_n - 1)?.inner,
            self.levels(r, two_n + 1)?.inner,
        ))
    }

    /// Middle integrals at every τ node, for J_{2n−1} and J_{2n+1}.
    pub fn middle_table(&self, r: f64, kind: Kernel) -> Result<(Vec<f64>, Vec<f64>)> {
        let kernel = self.table(kind)?;
        let two_n = 2 * self.forcing.n;
        Ok((
            self.middle(&self.levels(r, two_n - 1)?, kernel),
            self.middle(&self.levels(r, two_n + 1)?, kernel),
        ))
    }

    /// X_∓(r) for every tabulated kernel, in the order they were requested.
    pub fn integrals_all(&self, r: f64) -> Result<Vec<(Kernel, TripleValues)>> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(NsError::Domain(format!("r must be finite and >= 0, got {r}")));
        }
        let two_n = 2 * self.forcing.n;
        let lm = self.levels(r, two_n - 1)?;
        let lp = self.levels(r, two_n + 1)?;
        Ok(self
            .kernels
            .iter()
            .map(|(kind, kv)| {
                let minus = self.tau.apply(&self.middle(&lm, kv));
                let plus = self.tau.apply(&self.middle(&lp, kv));
                (*kind, TripleValues { minus, plus })
            })
            .collect())
    }

    pub fn integrals(&self, r: f64, kind: Kernel) -> Result<TripleValues> {
        self.table(kind)?;
        Ok(self
            .integrals_all(r)?
            .into_iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, v)| v)
            .expect("kernel present"))
    }

    /// (R_{2,2n−1}, R_{2,2n+1}) profiles of u₂* at r, in the normalisation
    /// of `ModalField::from_profiles` for mode 2n.
    pub fn u2star_profiles(&self, r: f64) -> Result<(f64, f64)> {
        let x = self.integrals(r, Kernel::PhiPhi)?;
        let c = -(self.forcing.n as f64) / 8.0;
        Ok((c * x.minus, c * x.plus))
    }

    pub fn u2star(&self, r: f64, phi: f64) -> Result<ModalSample> {
        let (rm, rp) = self.u2star_profiles(r)?;
        Ok(ModalField::from_profiles(2 * self.forcing.n, rm, rp, phi, 1.0))
    }

    /// Three-level refinement check at `radii`: each level is re-run on its
    /// refined grid with the other two held fixed.
    pub fn refinement(&self, radii: &[f64]) -> Result<RefinementReport> {
        let p = self.policy;
        let kinds = [Kernel::PhiPhi];
        let fine_inner = TripleEngine::new(&self.forcing, self.t, &p.refined_inner(), &kinds)?;
        let fine_middle = TripleEngine::new(&self.forcing, self.t, &p.refined_middle(), &kinds)?;
        let fine_outer = TripleEngine::new(&self.forcing, self.t, &p.refined_outer(), &kinds)?;
        let mut halved = p;
        halved.inner_panels = quadrature::refined_panels(p.inner_panels, 2.0);
        let fine_step = TripleEngine::new(&self.forcing, self.t, &halved, &kinds)?;
        let mut d4 = 0.0f64;
        let n_rt = self.r_tilde.len();
        let (mut d1, mut d2, mut d3) = (0.0f64, 0.0f64, 0.0f64);
        for &r in radii {
            let (am, ap) = self.inner_table(r)?;
            let (bm, bp) = fine_inner.inner_table(r)?;
            // the last τ row is analytic on both grids
            let body = am.len() - n_rt;
            for (x, y) in am[..body].iter().zip(&bm[..body]).chain(ap[..body].iter().zip(&bp[..body])) {
                d1 = d1.max((x - y).abs());
            }

            let (am, ap) = self.middle_table(r, Kernel::PhiPhi)?;
            let (bm, bp) = fine_middle.middle_table(r, Kernel::PhiPhi)?;
            for (x, y) in am.iter().zip(&bm).chain(ap.iter().zip(&bp)) {
                d2 = d2.max((x - y).abs());
            }

            let a = self.integrals(r, Kernel::PhiPhi)?;
            let b = fine_outer.integrals(r, Kernel::PhiPhi)?;
            d3 = d3.max((a.minus - b.minus).abs()).max((a.plus - b.plus).abs());

            let c = fine_step.integrals(r, Kernel::PhiPhi)?;
            let scale = c.minus.abs().max(c.plus.abs());
            if scale > 0.0 {
                let diff = (a.minus - c.minus).abs().max((a.plus - c.plus).abs());
                d4 = d4.max(diff / scale);
            }
        }
        Ok(RefinementReport {
            radii: radii.to_vec(),
            inner_difference: d1,
            inner_tol: p.inner_tol,
            middle_difference: d2,
            middle_tol: p.middle_tol,
            outer_difference: d3,
            outer_tol: p.outer_tol,
            resolution_relative: d4,
        })
    }
}

/// u₂*(r, φ, t) with a freshly built engine. Build a `TripleEngine` once
/// when sampling many points.
pub fn ns_u2star(
    f: &NsForcing,
    r: f64,
    phi: f64,
    t: f64,
    policy: &PrecisionPolicy,
) -> Result<ModalSample> {
    if t == 0.0 {
        return Ok(ModalSample::zero());
    }
    TripleEngine::new(f, t, policy, &[Kernel::PhiPhi])?.u2star(r, phi)
}

/// u₂ = u₁ − u₂* at one point, using an existing engine.
pub fn ns_u2(engine: &TripleEngine, r: f64, phi: f64) -> Result<ModalSample> {
    let u1 = ns_u1(engine.forcing(), r, phi, engine.time())?;
    Ok(u1.sub(&engine.u2star(r, phi)?))
}
