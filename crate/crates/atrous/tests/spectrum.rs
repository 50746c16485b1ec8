use std::f64::consts::PI;

use atrous::sequences::FiniteSequence;
use atrous::spectrum::{
    autocorrelation, certified_range, certify_samples, eval_ft, eval_ft_grid, haar_factor_bound_check,
    haar_factor_modulus, power_grid, quadrature_energy, GridSpec, TrigBounds,
};
use atrous::AtrousError;
use proptest::prelude::*;

/// Direct DFT sum.
fn naive_ft(x: &FiniteSequence, xi: f64) -> (f64, f64) {
    x.iter().fold((0.0, 0.0), |(re, im), (k, v)| {
        let t = 2.0 * PI * k as f64 * xi;
        (re + v * t.cos(), im - v * t.sin())
    })
}

fn seq() -> impl Strategy<Value = FiniteSequence> {
    (-8i64..8, prop::collection::vec(-1.0f64..1.0, 1..10))
        .prop_map(|(o, t)| FiniteSequence::new(o, t))
}

#[test]
fn grid_must_be_power_of_two() {
    assert_eq!(GridSpec::new(100), Err(AtrousError::GridNotPowerOfTwo(100)));
    assert!(GridSpec::new(128).is_ok());
    assert_eq!(GridSpec::exceeding(64).n, 128);
}

#[test]
fn grid_smaller_than_support_is_rejected() {
    let x = FiniteSequence::new(0, vec![1.0; 20]);
    assert!(matches!(
        eval_ft_grid(&x, GridSpec::new(16).unwrap()),
        Err(AtrousError::GridTooSmall { .. })
    ));
    assert!(certified_range(&[x], GridSpec::new(32).unwrap()).is_err());
}

#[test]
fn haar_factor_closed_form() {
    for j in 1..6u32 {
        for i in 1..50 {
            let xi = i as f64 / 101.0;
            let m = 2f64.powi(j as i32);
            let expected = ((m * PI * xi).sin() / (m * (PI * xi).sin())).abs();
            assert!((haar_factor_modulus(j, xi) - expected).abs() < 1e-12);
        }
    }
}

#[test]
fn sine_product_bound_on_small_grids() {
    for j in 1..=8 {
        assert!(haar_factor_bound_check(j, GridSpec::new(1024).unwrap()));
    }
}

#[test]
fn single_tap_quadrature_is_exact() {
    let x = FiniteSequence::new(0, vec![1.0, -2.0, 0.5]);
    let e = quadrature_energy(&[FiniteSequence::impulse(4, 3.0)], &x);
    assert_eq!(e, 9.0 * x.norm_sq());
}

proptest! {
    #[test]
    fn grid_transform_matches_direct_sum(x in seq()) {
        let grid = GridSpec::new(32).unwrap();
        let v = eval_ft_grid(&x, grid).unwrap();
        for (k, c) in v.iter().enumerate() {
            let (re, im) = naive_ft(&x, k as f64 / 32.0);
            prop_assert!((c.re - re).abs() < 1e-12 && (c.im - im).abs() < 1e-12);
        }
    }

    #[test]
    fn pointwise_transform_matches_direct_sum(x in seq(), xi in -2.0f64..2.0) {
        let c = eval_ft(&x, xi);
        let (re, im) = naive_ft(&x, xi);
        prop_assert!((c.re - re).abs() < 1e-12 && (c.im - im).abs() < 1e-12);
    }

    #[test]
    fn autocorrelation_is_the_fourier_series_of_the_power(x in seq(), xi in 0.0f64..1.0) {
        let r = autocorrelation(&x);
        let m = (r.len() - 1) as i64 / 2;
        let series: f64 = r.iter().enumerate()
            .map(|(i, v)| v * (2.0 * PI * (i as i64 - m) as f64 * xi).cos())
            .sum();
        prop_assert!((series - eval_ft(&x, xi).norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn certified_interval_encloses_dense_extrema(x in seq(), y in seq()) {
        let grid = GridSpec::new(64).unwrap();
        let r = certified_range(&[x.clone(), y.clone()], grid).unwrap();
        let dense: Vec<f64> = (0..8192)
            .map(|k| {
                let xi = k as f64 / 8192.0;
                eval_ft(&x, xi).norm_sqr() + eval_ft(&y, xi).norm_sqr()
            })
            .collect();
        let mn = dense.iter().cloned().fold(f64::INFINITY, f64::min);
        let mx = dense.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(r.inf.lo <= mn + 1e-12);
        prop_assert!(r.sup.hi >= mx - 1e-12);
        prop_assert!(r.inf.hi >= mn - 1e-12);
        prop_assert!(r.sup.lo <= mx + 1e-12);
    }

    #[test]
    fn sample_and_coefficient_bounds_agree(x in seq()) {
        let grid = GridSpec::new(64).unwrap();
        let s = power_grid(&x, grid).unwrap();
        let a = TrigBounds::from_samples(&s, x.len() - 1);
        let b = TrigBounds::for_terms(&[&x]);
        prop_assert!((a.lipschitz - b.lipschitz).abs() <= 1e-9 * (1.0 + b.lipschitz));
        prop_assert!((a.curvature - b.curvature).abs() <= 1e-9 * (1.0 + b.curvature));
        let r = certify_samples(&s, x.len() - 1, grid).unwrap();
        prop_assert!(r.inf.lo <= r.inf.hi && r.sup.lo <= r.sup.hi);
    }
}
