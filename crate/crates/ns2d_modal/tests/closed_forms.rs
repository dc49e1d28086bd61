mod common;

use common::{deriv, rel, simpson};
use ns2d_modal::*;
use proptest::prelude::*;
use specfun::bessel_jn;

/// (n, F, μ, ν, t, r, [R₋, R₊, R₋′, R₊′, T_r, T_φ, T_φφ]) from a 40-digit
/// evaluation in which the derivatives are numerical and the force terms
/// are built from the profiles through the quadratic products, with
/// T_φφ = (T_φ r)′ − 2n T_r.
const FROZEN: &[(u32, f64, f64, f64, f64, f64, [f64; 7])] = &[
    (1, 1.0, 1.0, 1.0, 10.0, 2.0, [0.0070621971176401954, 0.016482393750760458, -0.011902387844751058, -0.0045800059060093994, -0.00023280382727686255, -0.00032766987704651485, 0.0017162741310768724]),
    (2, 0.5, 1.0, 1.5, 10.0, 0.7, [0.006763445873414902, 0.00089191373791042749, 0.0027415076475212498, 0.0030980704377410638, -3.4470915943499093e-5, -3.7016886768555593e-5, 3.2276538980167004e-5]),
    (3, 0.33, 1.3, 0.75, 10.0, 1.3, [0.0009407000677640585, 0.00079499107531613854, -0.0014631467266919874, 0.00046425121458703574, -2.3010712566821946e-6, -3.1998194772394446e-6, 1.618616461387953e-5]),
    (5, 0.2, 1.0, 0.75, 10.0, 3.5, [0.00017454215761791028, 0.0011148281908591362, -0.0003852782119144177, -0.0013263790779950611, -2.2238230606380013e-7, -3.9601989174696139e-7, 7.2088876780667736e-6]),
    (4, 0.25, 1.0, 1.0, 0.3, 1.1, [0.0029800534216539598, 0.00071067221541951138, 0.0027405700233702612, 0.0021565201474154865, -7.7012406081284178e-6, -8.9577965483007537e-6, 1.9940744309470422e-5]),
    (2, 0.5, 1.0, 1.0, 10.0, 12.0, [1.6004648460784953e-7, 7.0330971856210973e-5, -1.2079029781682129e-7, -1.7448615459185268e-5, -3.7520749348800561e-12, -1.1405418941482838e-11, 1.2939015440957707e-10]),
];

#[test]
fn frozen_profiles_and_force_terms() {
    for &(n, fa, mu, nu, t, r, ex) in FROZEN {
        let f = NsForcing::new(n, fa, mu, nu).unwrap();
        let (rm, rp) = ns_profiles_r1(&f, r, t).unwrap();
        let (dm, dp) = ns_profile_derivatives(&f, r, t).unwrap();
        let c = ns_correction_force(&f, r, t).unwrap();
        let got = [rm, rp, dm, dp, c.t_r, c.t_phi, c.t_phiphi];
        for (i, (g, e)) in got.iter().zip(&ex).enumerate() {
            assert!(rel(*g, *e) < 1e-11, "n={n} r={r} idx={i}: {g:e} vs {e:e}");
        }
    }
}

#[test]
fn profiles_vanish_at_t_zero() {
    let f = NsForcing::new(2, 0.5, 1.0, 1.0).unwrap();
    for r in [0.0, 0.5, 3.0] {
        assert_eq!(ns_profiles_r1(&f, r, 0.0).unwrap(), (0.0, 0.0));
    }
}

#[test]
fn minus_profile_at_origin_for_n1() {
    for &(fa, mu, nu, t) in &[(1.0, 1.0, 1.0, 10.0), (0.7, 1.3, 0.75, 2.5)] {
        let f = NsForcing::new(1, fa, mu, nu).unwrap();
        let d: f64 = 4.0 * mu * mu * nu * t + 1.0;
        let expected = fa * (1.0 - d.powi(-2)) / (16.0 * mu.powi(4) * nu);
        let (rm, rp) = ns_profiles_r1(&f, 0.0, t).unwrap();
        assert!(rel(rm, expected) < 1e-14);
        assert_eq!(rp, 0.0);
    }
}

#[test]
fn profiles_match_substituted_time_integral() {
    // u₁ in the variable y = 1/(4μ²ν(t−τ)+1), integrated directly
    let (n, fa, mu, nu, t, r) = (1u32, 1.0, 1.0, 1.0, 10.0, 2.0f64);
    let f = NsForcing::new(n, fa, mu, nu).unwrap();
    let d = 4.0 * mu * mu * nu * t + 1.0;
    let x = mu * mu * r * r;
    let nf = n as f64;
    let om = fa * r.powi(n as i32 - 1) / (8.0 * mu.powi(4) * nu)
        * simpson(|y| y.powi(n as i32) * (-x * y).exp(), 1.0 / d, 1.0, 4000);
    // Φ(n+1, n+2; −z) = (n+1) ∫_0^1 s^n e^{−zs} ds
    let phi = |z: f64| (nf + 1.0) * simpson(|s| s.powi(n as i32) * (-z * s).exp(), 0.0, 1.0, 400);
    let op = fa * r.powi(n as i32 + 1) / (8.0 * mu * mu * nu * (nf + 1.0))
        * simpson(|y| y.powi(n as i32 + 1) * phi(x * y), 1.0 / d, 1.0, 2000);
    let (rm, rp) = ns_profiles_r1(&f, r, t).unwrap();
    assert!((rm - om).abs() < 1e-8, "{rm} vs {om}");
    assert!((rp - op).abs() < 1e-8, "{rp} vs {op}");
}

#[test]
fn inviscid_and_bad_parameters_are_rejected() {
    assert!(matches!(NsForcing::new(1, 1.0, 1.0, 0.0), Err(NsError::Forcing(_))));
    assert!(matches!(NsForcing::new(0, 1.0, 1.0, 1.0), Err(NsError::Forcing(_))));
    assert!(NsForcing::new(1, -1.0, 1.0, 1.0).is_err());
    let f = NsForcing::new(1, 1.0, 1.0, 1.0).unwrap();
    assert!(matches!(ns_profiles_r1(&f, -1.0, 1.0), Err(NsError::Domain(_))));
    assert!(matches!(ns_profiles_r1(&f, 1.0, -1.0), Err(NsError::Domain(_))));
}

#[test]
fn convergence_regime_flag() {
    assert!(NsForcing::new(3, 1.0 / 3.0, 1.0, 1.0).unwrap().convergence_regime());
    assert!(!NsForcing::new(3, 0.5, 1.0, 1.0).unwrap().convergence_regime());
}

#[test]
fn inner_hankel_matches_direct_quadrature() {
    for &(n, fa, mu, rho) in &[(1u32, 1.0, 1.0, 0.7), (3, 0.33, 1.3, 2.0), (5, 0.2, 1.0, 4.5)] {
        let direct = simpson(
            |s| fa * s.powi(n as i32 + 1) * (-(mu * s) * (mu * s)).exp() * bessel_jn(n, s * rho).unwrap(),
            0.0,
            12.0,
            6000,
        );
        let closed = ns_inner_hankel(n, fa, mu, rho, 1.0);
        assert!((direct - closed).abs() < 1e-10, "n={n}: {direct} vs {closed}");
        assert!((ns_inner_hankel(n, fa, mu, rho, 0.25) - 0.25 * closed).abs() < 1e-16);
    }
}

#[test]
fn derivatives_match_finite_differences() {
    for f in common::presets() {
        for &r in &[0.3, 1.0, 2.2, 6.0] {
            let (dm, dp) = ns_profile_derivatives(&f, r, 10.0).unwrap();
            let fm = deriv(|x| ns_profiles_r1(&f, x, 10.0).unwrap().0, r, 1e-3);
            let fp = deriv(|x| ns_profiles_r1(&f, x, 10.0).unwrap().1, r, 1e-3);
            let scale = dm.abs().max(dp.abs());
            assert!((dm - fm).abs() < 1e-6 * scale, "n={} r={r}", f.n);
            assert!((dp - fp).abs() < 1e-6 * scale, "n={} r={r}", f.n);
        }
    }
}

#[test]
fn printed_force_forms_agree() {
    for f in common::presets() {
        for &t in &[0.5, 10.0] {
            let peak = ns_correction_force(&f, 1.5, t).unwrap();
            for &r in &[0.4, 1.5, 3.0, 8.0] {
                let c = ns_correction_force(&f, r, t).unwrap();
                let dr = (c.t_r_expanded - c.t_r).abs();
                let dpp = (c.t_phiphi_expanded - c.t_phiphi).abs();
                if r < 5.0 {
                    assert!(dr < 1e-12 * c.t_r.abs(), "n={} r={r} t={t}", f.n);
                    assert!(dpp < 1e-12 * c.t_phiphi.abs(), "n={} r={r} t={t}", f.n);
                } else {
                    // the expanded forms cancel in the tail; compare on the scale of the bulk
                    assert!(dr < 1e-12 * peak.t_r.abs(), "n={} r={r} t={t}", f.n);
                    assert!(dpp < 1e-12 * peak.t_phiphi.abs(), "n={} r={r} t={t}", f.n);
                }
                assert!(rel(c.t_phir, 2.0 * f.n as f64 * c.t_r) < 1e-14);
            }
        }
    }
}

#[test]
fn force_terms_match_quadratic_products_of_profiles() {
    for f in common::presets() {
        let nf = f.n as f64;
        for &r in &[0.5, 2.0, 4.0] {
            let (rm, rp) = ns_profiles_r1(&f, r, 10.0).unwrap();
            let (dm, dp) = ns_profile_derivatives(&f, r, 10.0).unwrap();
            let tr = (rm + rp) * (dm + dp) - ((nf - 1.0) * rm + (nf + 1.0) * rp) * (rm - rp) / r;
            let tf = (rm + rp) * (dm - dp) - ((nf - 1.0) * rm - (nf + 1.0) * rp) * (rm - rp) / r;
            let c = ns_correction_force(&f, r, 10.0).unwrap();
            assert!(rel(c.t_r, tr) < 1e-11, "n={} r={r}", f.n);
            assert!(rel(c.t_phi, tf) < 1e-11, "n={} r={r}", f.n);
        }
    }
}

#[test]
fn tangential_flux_split_by_finite_differences() {
    for f in common::presets() {
        for &r in &[0.6, 1.7, 3.5] {
            let flux = deriv(|x| ns_correction_force(&f, x, 10.0).unwrap().t_phi * x, r, 1e-3);
            let c = ns_correction_force(&f, r, 10.0).unwrap();
            let split = c.t_phiphi + 2.0 * f.n as f64 * c.t_r;
            assert!((flux - split).abs() < 1e-6 * split.abs().max(c.t_phiphi.abs()), "n={} r={r}", f.n);
        }
    }
}

#[test]
fn phiphi_force_decays_at_least_like_power_bound() {
    for f in common::presets() {
        let p = 2 * f.n as i32 + 5;
        let scaled: Vec<f64> = [20.0, 25.0, 30.0, 35.0]
            .iter()
            .map(|&r: &f64| ns_correction_force(&f, r, 10.0).unwrap().t_phiphi.abs() * r.powi(p))
            .collect();
        for w in scaled.windows(2) {
            assert!(w[1] < w[0], "n={} nu={}: {scaled:?}", f.n, f.nu);
        }
    }
}

#[test]
fn far_field_is_small_against_the_peak() {
    for f in common::presets() {
        let sup = (0..=500)
            .map(|i| ns_u1(&f, 0.1 * i as f64, 0.0, 10.0).unwrap().magnitude())
            .fold(0.0, f64::max);
        let far = ns_u1(&f, 50.0, 0.0, 10.0).unwrap().magnitude();
        assert!(far <= 1e-3 * sup, "n={} nu={}: {far:e} vs {sup:e}", f.n, f.nu);
    }
}

#[test]
fn lower_viscosity_gives_larger_first_iterate() {
    for n in 1..=5u32 {
        let sups: Vec<f64> = [1.5, 1.0, 0.75]
            .iter()
            .map(|&nu| {
                let f = NsForcing::new(n, 1.0 / n as f64, 1.0, nu).unwrap();
                (0..=200)
                    .map(|i| ns_u1(&f, 0.05 * i as f64, 0.0, 10.0).unwrap().magnitude())
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(sups[0] < sups[1] && sups[1] < sups[2], "n={n}: {sups:?}");
    }
}

proptest! {
    #[test]
    fn bracket_vanishes_at_time_zero(a in 1u32..6, dc in 1u32..3, r in 0.0f64..20.0) {
        let f = NsForcing::new(1, 1.0, 1.0, 1.0).unwrap();
        prop_assert_eq!(bracket(&f, a, a + dc, a as i32, r, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_iterate_is_finite_and_bounded(n in 1u32..6, nu in 0.5f64..2.0, r in 0.0f64..60.0, t in 0.0f64..20.0) {
        let f = NsForcing::new(n, 1.0 / n as f64, 1.0, nu).unwrap();
        let (rm, rp) = ns_profiles_r1(&f, r, t).unwrap();
        prop_assert!(rm.is_finite() && rp.is_finite());
        let c = ns_correction_force(&f, r, t).unwrap();
        prop_assert!(c.t_r.is_finite() && c.t_phi.is_finite() && c.t_phiphi.is_finite());
    }
}
