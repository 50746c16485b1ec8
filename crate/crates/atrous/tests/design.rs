use std::f64::consts::PI;

use atrous::design::{
    bezout_residual, bezout_solve, interp_design, poly_from_roots, poly_roots, pr_triplet_design,
    pr_triplet_design_with, riesz_factor, riesz_factor_z, symmetric_family, CosinePolynomial, Phase,
    TripletPhases, ZPolynomial,
};
use atrous::filterbank::check_perfect_reconstruction;
use atrous::spectrum::{eval_ft, GridSpec};
use atrous::AtrousError;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn daubechies_bezout_pair() {
    // (1−z)²(1+2z) + z²(3−2z) = 1
    let one_minus_z = ZPolynomial::c_minus_z(1.0);
    let z = ZPolynomial::z();
    let (p, q) = bezout_solve(&one_minus_z.pow(2), &z.pow(2), 1, 1).unwrap();
    assert!((p.coeffs()[0] - 1.0).abs() < 1e-12 && (p.coeffs()[1] - 2.0).abs() < 1e-12);
    assert!((q.coeffs()[0] - 3.0).abs() < 1e-12 && (q.coeffs()[1] + 2.0).abs() < 1e-12);
}

#[test]
fn bezout_rejects_common_factors_and_bad_degrees() {
    let f = ZPolynomial::c_minus_z(0.5);
    let g = f.mul(&ZPolynomial::z());
    assert!(matches!(bezout_solve(&f.pow(2), &g, 1, 1), Err(AtrousError::NotCoprime(_))));
    assert!(matches!(
        bezout_solve(&f, &ZPolynomial::z(), 2, 0),
        Err(AtrousError::BadParams(_))
    ));
}

#[test]
fn triplet_cofactors_match_published_polynomials() {
    let t = pr_triplet_design_with(5.0 * PI / 16.0, PI / 4.0, TripletPhases::default()).unwrap();
    let close = |p: &ZPolynomial, want: &[f64], tol: f64| {
        p.coeffs().len() == want.len() && p.coeffs().iter().zip(want).all(|(a, b)| (a - b).abs() <= tol)
    };
    assert!(close(&t.p, &[2.09225432, 8.14498995], 1e-7));
    assert!(close(&t.q, &[10.16968834, -17.3146783, 8.14498995], 1e-6));
    assert!(close(&t.r, &[1.0, -4.0, 20.0], 1e-9));
    assert!(close(&t.s, &[24.0, -20.0], 1e-9));
    assert!(t.bezout_residual < 1e-10);
}

#[test]
fn triplet_angle_preconditions() {
    assert!(matches!(pr_triplet_design(0.3, 0.5), Err(AtrousError::BadParams(_))));
    assert!(pr_triplet_design(PI / 2.0, 0.1).is_err());
    assert!(pr_triplet_design(0.5, 0.0).is_err());
}

#[test]
fn interpolation_needs_matching_constraint_count() {
    assert!(matches!(interp_design(2, &[(0.0, 1.0)]), Err(AtrousError::BadParams(_))));
    assert!(matches!(
        interp_design(1, &[(0.1, 1.0), (0.1, 2.0)]),
        Err(AtrousError::SingularSystem(_))
    ));
    let c = interp_design(0, &[(0.0, 1.0)]).unwrap();
    assert_eq!(c.coeffs(), &[1.0]);
}

#[test]
fn negative_polynomial_has_no_factor() {
    let tau = CosinePolynomial::new(vec![0.2, 1.0]);
    assert!(matches!(riesz_factor(&tau), Err(AtrousError::NotNonnegative(_))));
}

#[test]
fn symmetric_family_phi_closed_form() {
    // |ĥ|² + |ĝ|² = cos⁴(πξ)p² + sin⁴(πξ)p(ξ+1/2)² with p = 1 + a − a cos 2πξ.
    let a = 0.3;
    let b = symmetric_family(2, &[a]).unwrap();
    for i in 0..50 {
        let xi = i as f64 / 97.0;
        let p = |t: f64| 1.0 + a - a * (2.0 * PI * t).cos();
        let c = (PI * xi).cos().powi(2);
        let s = (PI * xi).sin().powi(2);
        let want = c * c * p(xi).powi(2) + s * s * p(xi + 0.5).powi(2);
        let got = eval_ft(b.lowpass(), xi).norm_sqr() + eval_ft(&b.highpass()[0], xi).norm_sqr();
        assert!((got - want).abs() < 1e-12);
    }
}

fn cosine() -> impl Strategy<Value = CosinePolynomial> {
    prop::collection::vec(-1.0f64..1.0, 1..6).prop_map(|mut c| {
        // Make it strictly positive: c₀ exceeds the sum of the other magnitudes.
        let rest: f64 = c.iter().skip(1).map(|v| v.abs()).sum();
        c[0] = rest + 0.1 + c[0].abs();
        CosinePolynomial::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn riesz_factor_has_the_requested_modulus(tau in cosine(), xi in 0.0f64..0.5) {
        let b = riesz_factor(&tau).unwrap();
        let err = (eval_ft(&b, xi).norm_sqr() - tau.eval(xi)).abs();
        prop_assert!(err <= 1e-9 * (1.0 + tau.eval(xi)));
        prop_assert!(b.len() <= tau.degree() + 1);
    }

    #[test]
    fn z_factor_phases_share_a_modulus(r1 in 0.05f64..2.0, r2 in 1.5f64..4.0, xi in 0.0f64..0.5) {
        // f(z) = (1 + r1 z)(r2 − z) is positive on [0, 1].
        let f = ZPolynomial::new(vec![1.0, r1]).mul(&ZPolynomial::c_minus_z(r2));
        let z = (PI * xi).sin().powi(2);
        for phase in [Phase::Minimum, Phase::Maximum] {
            let b = riesz_factor_z(&f, phase).unwrap();
            prop_assert!((eval_ft(&b, xi).norm_sqr() - f.eval(z)).abs() <= 1e-9 * (1.0 + f.eval(z)));
        }
    }

    #[test]
    fn roots_rebuild_the_polynomial(roots in prop::collection::vec(-3.0f64..3.0, 1..6)) {
        let rs: Vec<Complex64> = roots.iter().map(|r| Complex64::new(*r, 0.0)).collect();
        let c = poly_from_roots(&rs);
        for x in [-1.5f64, 0.3, 2.2] {
            let direct: f64 = roots.iter().map(|r| x - r).product();
            let via: f64 = c.iter().rev().fold(0.0, |acc, v| acc * x + v);
            prop_assert!((direct - via).abs() <= 1e-9 * (1.0 + direct.abs()));
        }
        let found = poly_roots(&c);
        prop_assert_eq!(found.len(), roots.len());
    }

    #[test]
    fn interpolant_hits_every_constraint(vals in prop::collection::vec(-2.0f64..2.0, 5)) {
        let xs = [0.0, 0.1, 0.2, 0.35, 0.5];
        let c: Vec<(f64, f64)> = xs.iter().cloned().zip(vals.iter().cloned()).collect();
        let p = interp_design(4, &c).unwrap();
        for (xi, v) in c {
            prop_assert!((p.eval(xi) - v).abs() <= 1e-10);
        }
    }

    #[test]
    fn bezout_identity_holds(s in 0.1f64..0.9) {
        let f1 = ZPolynomial::c_minus_z(s).pow(2).mul(&ZPolynomial::c_minus_z(1.0));
        let f2 = ZPolynomial::z().pow(2);
        let (p, q) = bezout_solve(&f1, &f2, 1, 2).unwrap();
        prop_assert!(bezout_residual(&f1, &f2, &p, &q) <= 1e-9);
    }

    #[test]
    fn triplets_are_perfect_reconstruction_or_rejected(t0 in 0.2f64..1.5, frac in 0.1f64..0.9) {
        let t1 = t0 * frac;
        match pr_triplet_design(t0, t1) {
            Ok(bank) => {
                prop_assert!(check_perfect_reconstruction(&bank, GridSpec::default()) <= 1e-8);
                prop_assert!(eval_ft(bank.lowpass(), t0 / PI).norm() <= 1e-8);
                prop_assert!(eval_ft(&bank.highpass()[1], t1 / PI).norm() <= 1e-8);
            }
            Err(e) => prop_assert!(matches!(e, AtrousError::NegativeFactor(_)), "{e}"),
        }
    }
}
