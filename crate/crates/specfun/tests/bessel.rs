mod common;

use proptest::prelude::*;
use specfun::{bessel_jn, SpecFunError};

// Reference values computed with 40-digit arithmetic.
const FROZEN: &[(u32, f64, f64)] = &[
    (0, 0.5, 0.93846980724081290423),
    (1, 2.0, 0.5767248077568733872),
    (2, 7.5, -0.23027341052579026215),
    (5, 11.9, -0.094538171508384696746),
    (0, 12.0, 0.047689310796833536624),
    (3, 12.5, 0.11000813631434926814),
    (11, 21.0, 0.17321232541318196077),
    (10, 30.0, -0.12987689399858876819),
    (0, 100.0, 0.019985850304223122424),
    (1, 250.0, -0.043269038410330749511),
    (7, 499.5, -0.024331496395340535022),
    (11, 480.0, -0.035313090264985287058),
    (4, 3000.0, -0.0078246430768628307228),
];

#[test]
fn trivial_values_at_origin() {
    assert_eq!(bessel_jn(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_jn(3, 0.0).unwrap(), 0.0);
}

#[test]
fn j1_of_two_matches_unit_circle_integral() {
    let oracle = common::bessel_circle(1, 2.0, 256);
    let got = bessel_jn(1, 2.0).unwrap();
    assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
}

#[test]
fn matches_unit_circle_integral_across_regimes() {
    for n in 0..=12u32 {
        for &x in &[0.3, 1.0, 3.7, 11.999, 12.0, 17.5, 24.9, 25.0, 60.0, 199.0, 500.0] {
            let oracle = common::bessel_circle(n, x, 4096);
            let got = bessel_jn(n, x).unwrap();
            assert!((got - oracle).abs() < 1e-12, "J_{n}({x}) = {got}, oracle {oracle}");
        }
    }
}

#[test]
fn matches_frozen_high_precision_values() {
    for &(n, x, want) in FROZEN {
        let got = bessel_jn(n, x).unwrap();
        assert!((got - want).abs() <= 2e-15, "J_{n}({x}) = {got:e}, want {want:e}");
    }
}

#[test]
fn parity_for_negative_argument() {
    for n in 0..6 {
        let pos = bessel_jn(n, 4.2).unwrap();
        let neg = bessel_jn(n, -4.2).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(neg, sign * pos);
    }
}

#[test]
fn non_finite_argument_is_a_domain_error() {
    for x in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
        assert!(matches!(bessel_jn(1, x), Err(SpecFunError::Domain { .. })));
    }
}

proptest! {
    #[test]
    fn three_term_recurrence(n in 1u32..=12, x in 1e-3f64..100.0) {
        let jm = bessel_jn(n - 1, x).unwrap();
        let j = bessel_jn(n, x).unwrap();
        let jp = bessel_jn(n + 1, x).unwrap();
        let resid = (jm + jp - 2.0 * n as f64 / x * j).abs();
        prop_assert!(resid <= 1e-11 * j.abs().max(1.0), "n={} x={} resid={:e}", n, x, resid);
    }
}
