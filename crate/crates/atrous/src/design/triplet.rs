use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bezout::{bezout_residual, bezout_solve};
use super::poly::ZPolynomial;
use super::riesz::{normalize_sign, riesz_factor_z, Phase};
use super::symmetric::center;
use crate::error::{AtrousError, Result};
use crate::filterbank::FilterBank;
use crate::sequences::FiniteSequence;

/// Phase of each Bezout cofactor's spectral factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletPhases {
    pub h_p: Phase,
    pub g1_q: Phase,
    pub g1_r: Phase,
    pub g2_q: Phase,
    pub g2_s: Phase,
}

impl Default for TripletPhases {
    /// The choice that reproduces the published two-high-pass PR bank.
    fn default() -> Self {
        TripletPhases {
            h_p: Phase::Minimum,
            g1_q: Phase::Minimum,
            g1_r: Phase::Maximum,
            g2_q: Phase::Minimum,
            g2_s: Phase::Minimum,
        }
    }
}

impl TripletPhases {
    pub fn all_minimum() -> Self {
        TripletPhases {
            h_p: Phase::Minimum,
            g1_q: Phase::Minimum,
            g1_r: Phase::Minimum,
            g2_q: Phase::Minimum,
            g2_s: Phase::Minimum,
        }
    }
}

/// A perfect-reconstruction triplet with its intermediate polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrTriplet {
    pub bank: FilterBank,
    pub s0: f64,
    pub s1: f64,
    pub p: ZPolynomial,
    pub q: ZPolynomial,
    pub r: ZPolynomial,
    pub s: ZPolynomial,
    /// Max coefficient residual of the two Bezout identities.
    pub bezout_residual: f64,
}

/// `(s² − z)²` factors as `(1, −2cos 2θ, 1)/4` with `s = sin θ`.
fn circle_pair(theta: f64) -> FiniteSequence {
    let c = (2.0 * theta).cos();
    FiniteSequence::new(0, vec![0.25, -0.5 * c, 0.25])
}

fn power(x: &FiniteSequence, e: u32) -> FiniteSequence {
    (0..e).fold(FiniteSequence::delta(), |acc, _| acc.convolve(x))
}

fn factor(f: &ZPolynomial, phase: Phase, name: &str) -> Result<FiniteSequence> {
    riesz_factor_z(f, phase).map_err(|e| match e {
        AtrousError::NotNonnegative(_) | AtrousError::OddCircleRoot(_) => {
            AtrousError::NegativeFactor(name.to_string())
        }
        other => other,
    })
}

/// [`pr_triplet_design_with`] using the default phases, returning only the bank.
pub fn pr_triplet_design(theta0: f64, theta1: f64) -> Result<FilterBank> {
    Ok(pr_triplet_design_with(theta0, theta1, TripletPhases::default())?.bank)
}

/// Builds `{h, g¹, g²}` with `|ĥ|² + |ĝ¹|² + |ĝ²|² = 1` from
/// `(s₀²−z)²(1−z)p + z²(1−z)²qr + z³(s₁²−z)²qs = 1`, `s = sin θ`, `z = sin²(πξ)`.
///
/// `ĥ` vanishes at `ξ = 1/2, ±θ₀/π`; `ĝ¹` at `0, 1/2`; `ĝ²` at `0, ±θ₁/π`.
pub fn pr_triplet_design_with(theta0: f64, theta1: f64, phases: TripletPhases) -> Result<PrTriplet> {
    if !(theta0.is_finite() && theta1.is_finite() && 0.0 < theta1 && theta1 < theta0 && theta0 < PI / 2.0)
    {
        return Err(AtrousError::BadParams(
            "angles must satisfy 0 < θ1 < θ0 < π/2".into(),
        ));
    }
    let s0 = theta0.sin();
    let s1 = theta1.sin();
    let one_minus_z = ZPolynomial::c_minus_z(1.0);
    let z = ZPolynomial::z();

    let f1 = ZPolynomial::c_minus_z(s0 * s0).pow(2).mul(&one_minus_z);
    let f2 = z.pow(2);
    let (p, q) = bezout_solve(&f1, &f2, 1, 2)?;
    let e1 = one_minus_z.pow(2);
    let e2 = z.mul(&ZPolynomial::c_minus_z(s1 * s1).pow(2));
    let (r, s) = bezout_solve(&e1, &e2, 2, 1)?;
    let residual = bezout_residual(&f1, &f2, &p, &q).max(bezout_residual(&e1, &e2, &r, &s));

    let low = FiniteSequence::new(0, vec![0.5, 0.5]);
    let high = FiniteSequence::new(0, vec![0.5, -0.5]);

    let h = low
        .convolve(&circle_pair(theta0))
        .convolve(&factor(&p, phases.h_p, "p")?);
    let g1 = power(&high, 2)
        .convolve(&power(&low, 2))
        .convolve(&factor(&q, phases.g1_q, "q")?)
        .convolve(&factor(&r, phases.g1_r, "r")?);
    let g2 = power(&high, 3)
        .convolve(&circle_pair(theta1))
        .convolve(&factor(&q, phases.g2_q, "q")?)
        .convolve(&factor(&s, phases.g2_s, "s")?);

    let h = center(&normalize_sign(h));
    let g1 = center(&normalize_sign(g1));
    let g2 = center(&normalize_sign(g2));
    let bank = FilterBank::new(
        format!("pr-triplet-{theta0}-{theta1}"),
        h,
        vec![g1, g2],
    )?;
    Ok(PrTriplet {
        bank,
        s0,
        s1,
        p,
        q,
        r,
        s,
        bezout_residual: residual,
    })
}
