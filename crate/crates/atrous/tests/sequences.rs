use atrous::sequences::{pairwise_sum, FiniteSequence};
use proptest::prelude::*;

/// Direct `O(mn)` convolution over the index range.
fn naive_convolve(x: &FiniteSequence, y: &FiniteSequence) -> Vec<(i64, f64)> {
    let lo = x.offset() + y.offset();
    let hi = x.last_index() + y.last_index();
    (lo..=hi)
        .map(|k| {
            let v = (y.offset()..=y.last_index()).map(|n| y.get(n) * x.get(k - n)).sum();
            (k, v)
        })
        .collect()
}

fn seq() -> impl Strategy<Value = FiniteSequence> {
    (-10i64..10, prop::collection::vec(-2.0f64..2.0, 1..12))
        .prop_map(|(o, t)| FiniteSequence::new(o, t))
}

fn max_diff(a: &FiniteSequence, b: &FiniteSequence) -> f64 {
    let lo = a.offset().min(b.offset());
    let hi = a.last_index().max(b.last_index());
    (lo..=hi).fold(0.0, |m, k| m.max((a.get(k) - b.get(k)).abs()))
}

#[test]
fn canonical_form_trims_zeros() {
    let x = FiniteSequence::new(-3, vec![0.0, 0.0, 1.5, 0.0, -2.0, 0.0]);
    assert_eq!(x.offset(), -1);
    assert_eq!(x.taps(), &[1.5, 0.0, -2.0]);
    assert!(FiniteSequence::new(5, vec![0.0, 0.0]).is_zero());
    assert_eq!(FiniteSequence::new(5, vec![0.0]), FiniteSequence::zero());
}

#[test]
fn upsample_places_taps_on_multiples() {
    let x = FiniteSequence::new(-1, vec![1.0, 2.0, 3.0]);
    let u = x.upsample(2);
    assert_eq!(u.offset(), -4);
    assert_eq!(u.get(-4), 1.0);
    assert_eq!(u.get(0), 2.0);
    assert_eq!(u.get(4), 3.0);
    assert_eq!(u.nonzero_count(), 3);
}

#[test]
fn involution_reverses() {
    let x = FiniteSequence::new(2, vec![1.0, 2.0]);
    let y = x.involute();
    assert_eq!(y.offset(), -3);
    assert_eq!(y.get(-3), 2.0);
    assert_eq!(y.get(-2), 1.0);
}

#[test]
fn modulation_alternates_sign_by_index() {
    let x = FiniteSequence::new(-1, vec![1.0, 1.0, 1.0]);
    assert_eq!(x.modulate_half().taps(), &[-1.0, 1.0, -1.0]);
}

#[test]
fn non_finite_taps_rejected() {
    assert!(FiniteSequence::try_new(0, vec![1.0, f64::NAN]).is_err());
}

#[test]
fn pairwise_sum_is_accurate_on_cancellation() {
    let v: Vec<f64> = (0..10_000).map(|i| if i % 2 == 0 { 0.1 } else { -0.1 }).collect();
    assert_eq!(pairwise_sum(&v), 0.0);
}

proptest! {
    #[test]
    fn convolution_matches_direct_sum(x in seq(), y in seq()) {
        let c = x.convolve(&y);
        for (k, v) in naive_convolve(&x, &y) {
            prop_assert!((c.get(k) - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn convolution_commutes(x in seq(), y in seq()) {
        prop_assert!(max_diff(&x.convolve(&y), &y.convolve(&x)) <= 1e-12);
    }

    #[test]
    fn convolution_associates(x in seq(), y in seq(), z in seq()) {
        let a = x.convolve(&y).convolve(&z);
        let b = x.convolve(&y.convolve(&z));
        prop_assert!(max_diff(&a, &b) <= 1e-10);
    }

    #[test]
    fn involution_is_an_adjoint(x in seq(), y in seq(), z in seq()) {
        let lhs = x.convolve(&y).dot(&z);
        let rhs = x.dot(&z.convolve(&y.involute()));
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn upsampling_distributes_over_convolution(x in seq(), y in seq(), m in 0u32..4) {
        let a = x.convolve(&y).upsample(m);
        let b = x.upsample(m).convolve(&y.upsample(m));
        prop_assert!(max_diff(&a, &b) <= 1e-12);
    }

    #[test]
    fn involution_and_translation_are_isometries(x in seq(), k in -50i64..50) {
        prop_assert_eq!(x.involute().involute(), x.clone());
        prop_assert_eq!(x.translate(k).norm_sq(), x.norm_sq());
        prop_assert!((x.upsample(3).norm_sq() - x.norm_sq()).abs() <= 1e-14 * x.norm_sq());
    }

    #[test]
    fn translation_commutes_with_convolution(x in seq(), y in seq(), k in -20i64..20) {
        prop_assert!(max_diff(&x.translate(k).convolve(&y), &x.convolve(&y).translate(k)) <= 1e-12);
    }

    #[test]
    fn symmetry_distance_ignores_reflection_and_sign(x in seq(), k in -20i64..20) {
        let y = x.involute().scale(-1.0).translate(k);
        prop_assert!(x.distance_up_to_symmetry(&y) <= 1e-15);
    }
}
