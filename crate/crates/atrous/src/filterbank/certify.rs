//! Sufficient conditions for stability of the infinitely iterated bank.

use serde::{Deserialize, Serialize};

use super::frame::{diverges, frame_function_samples};
use super::FilterBank;
use crate::error::{AtrousError, Result};
use crate::sequences::FiniteSequence;
use crate::spectrum::{power_grid, GridSpec, TrigBounds};

/// Largest `s` tried by [`certify_stability`].
pub const S_MAX: usize = 8;

/// Levels scanned for divergence when the Bessel condition fails.
pub const DIVERGENCE_JMAX: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedStable,
    BesselOnly,
    Unverified,
    DivergenceDetected,
}

/// `sup|Π_{k<s} p̂(2ᵏξ)| < 2^{ns}` for the smallest working `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselCondition {
    pub s: usize,
    /// `n − log₂(sup)/s` from the sampled supremum.
    pub epsilon: f64,
    /// `n − log₂(sup)/s` from the certified supremum.
    pub epsilon_certified: f64,
    pub sup_sampled: f64,
    pub sup_certified: f64,
}

/// Constants of the lower frame-bound conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerCondition {
    /// Sampled `inf |p̂|` on `[−1/4, 1/4]`.
    pub p0: f64,
    pub p0_certified: f64,
    /// Certified `sup (1 − |p̂(ξ)|)/|ξ|` on `0 < |ξ| ≤ 1/4`, at least `1e−6`.
    pub a: f64,
    pub delta: f64,
    /// Sampled `inf max_ℓ |ĝˡ|` on `1/4 ≤ |ξ| ≤ 1/2`.
    pub q0: f64,
    pub q0_certified: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityCertificate {
    /// Multiplicity of the cosine factor.
    pub n: u32,
    pub p_taps: FiniteSequence,
    pub bessel: Option<BesselCondition>,
    pub lower: Option<LowerCondition>,
    pub verdict: Verdict,
}

impl StabilityCertificate {
    pub fn epsilon(&self) -> Option<f64> {
        self.bessel.map(|b| b.epsilon)
    }

    pub fn q0(&self) -> Option<f64> {
        self.lower.map(|l| l.q0)
    }
}

/// Splits `ĥ(ξ) = [(1+e^{2πiξ})/2]ⁿ p̂(ξ)` by deflating the root at `e^{2πiξ} = −1`.
///
/// A value `|P(−1)| ≤ tol·‖h‖₁` counts as a root. The returned `p` has `p̂(0) = 1`.
pub fn factor_haar_type(h: &FiniteSequence, tol: f64) -> Result<(u32, FiniteSequence)> {
    let scale = h.l1_norm();
    let mut coeffs = h.taps().to_vec();
    let mut n = 0u32;
    while coeffs.len() > 1 && alternating_sum(&coeffs).abs() <= tol * scale {
        coeffs = deflate(&coeffs);
        n += 1;
    }
    if n == 0 {
        return Err(AtrousError::NotLowPass(format!(
            "no root at ξ = 1/2 (|ĥ(1/2)| = {:e})",
            alternating_sum(&coeffs).abs()
        )));
    }
    let two_n = 2f64.powi(n as i32);
    let p = FiniteSequence::new(h.offset() + n as i64, coeffs.iter().map(|c| c * two_n).collect());
    let p0 = p.sum();
    Ok((n, p.scale(1.0 / p0)))
}

fn alternating_sum(c: &[f64]) -> f64 {
    let v: Vec<f64> = c
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x } else { -x })
        .collect();
    crate::sequences::pairwise_sum(&v)
}

/// Quotient of `Σ aᵢyⁱ` by `1 + y`; forward recursion on the lower half, backward on the upper.
fn deflate(a: &[f64]) -> Vec<f64> {
    let d = a.len() - 1;
    let mut b = vec![0.0; d];
    let split = d / 2;
    for i in 0..split {
        b[i] = a[i] - if i > 0 { b[i - 1] } else { 0.0 };
    }
    for i in (split..d).rev() {
        b[i] = a[i + 1] - if i + 1 < d { b[i + 1] } else { 0.0 };
    }
    b
}

/// Finds the smallest `s ≤ s_max` with certified `sup|Π_{k<s} p̂(2ᵏξ)| < 2^{ns}`.
pub fn check_bessel_condition(
    p: &FiniteSequence,
    n: u32,
    s_max: usize,
    grid: GridSpec,
) -> Option<BesselCondition> {
    for s in 1..=s_max {
        let degree = ((1usize << s) - 1) * (p.len() - 1);
        let g = grid.doubled_past(2 * degree).ok()?;
        let p2 = power_grid(p, g).ok()?;
        let nn = g.n;
        let mut prod = vec![1.0; nn];
        for k in 0..s {
            let step = (1usize << k) % nn;
            for (m, v) in prod.iter_mut().enumerate() {
                *v *= p2[(m * step) % nn];
            }
        }
        let range = crate::spectrum::certify_samples(&prod, degree, g).ok()?;
        let sup_sampled = range.sampled_max().sqrt();
        let sup_certified = range.sup.hi.sqrt();
        let target = 2f64.powi((n as usize * s) as i32);
        if sup_certified < target {
            let eps = |sup: f64| n as f64 - sup.log2() / s as f64;
            return Some(BesselCondition {
                s,
                epsilon: eps(sup_sampled),
                epsilon_certified: eps(sup_certified),
                sup_sampled,
                sup_certified,
            });
        }
    }
    None
}

/// Checks the lower frame-bound conditions and returns their constants.
pub fn check_lower_condition(
    p: &FiniteSequence,
    bank: &FilterBank,
    grid: GridSpec,
) -> Option<LowerCondition> {
    let max_len = bank
        .highpass()
        .iter()
        .map(|g| g.len())
        .chain(std::iter::once(p.len()))
        .max()
        .unwrap();
    let g = grid.doubled_past((2 * max_len).max(8)).ok()?;
    let n = g.n;
    let quarter = n / 4;
    let h = g.spacing();

    let p2 = power_grid(p, g).ok()?;
    let pb = TrigBounds::for_terms(&[p]);
    let low_band = || (0..=quarter).chain(n - quarter..n);
    let p2_min = low_band().map(|k| p2[k]).fold(f64::INFINITY, f64::min);
    let p0 = p2_min.sqrt();
    let p0_certified = (p2_min - pb.pad(g)).max(0.0).sqrt();

    // First cell: 1 − |p̂| ≤ 1 − |p̂|² ≤ M ξ²/2. Other cells: |p̂|² stays above its linear
    // interpolant minus M Δ²/8.
    let mut a = pb.curvature * h / 2.0;
    let sag = pb.curvature * h * h / 8.0;
    for m in 1..quarter {
        let cell_min = p2[m].min(p2[m + 1]) - sag;
        let num = 1.0 - cell_min.max(0.0).sqrt();
        if num > 0.0 {
            a = a.max(num / g.point(m));
        }
    }
    let a = a.max(1e-6);
    let delta = (0.25f64).min(1.0 / (2.0 * a));
    let cond_ii = (0..=quarter)
        .take_while(|&k| g.point(k) <= delta)
        .all(|k| p2[k].sqrt() >= 1.0 - a * g.point(k) - 1e-12);

    let g2 = bank
        .highpass()
        .iter()
        .map(|f| power_grid(f, g))
        .collect::<Result<Vec<_>>>()
        .ok()?;
    let high_band = || (quarter..=n / 2).chain(n / 2..=n - quarter);
    let q2_min = high_band()
        .map(|k| g2.iter().map(|v| v[k]).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min);
    let q_pad = if g2.len() == 1 {
        TrigBounds::for_terms(&[&bank.highpass()[0]]).pad(g)
    } else {
        bank.highpass()
            .iter()
            .map(|f| TrigBounds::for_terms(&[f]).first_order_pad(g))
            .fold(0.0, f64::max)
    };
    let q0 = q2_min.sqrt();
    let q0_certified = (q2_min - q_pad).max(0.0).sqrt();

    if p0_certified > 0.0 && q0_certified > 0.0 && cond_ii {
        Some(LowerCondition {
            p0,
            p0_certified,
            a,
            delta,
            q0,
            q0_certified,
        })
    } else {
        None
    }
}

/// [`certify_stability_on`] with the default grid.
pub fn certify_stability(bank: &FilterBank) -> Result<StabilityCertificate> {
    certify_stability_on(bank, GridSpec::default())
}

/// Runs the factorization, the Bessel condition, the lower-bound conditions and, when the
/// Bessel condition fails, a divergence scan of the partial sums.
pub fn certify_stability_on(bank: &FilterBank, grid: GridSpec) -> Result<StabilityCertificate> {
    let (n, p) = factor_haar_type(bank.lowpass(), 1e-8)?;
    let bessel = check_bessel_condition(&p, n, S_MAX, grid);
    let lower = check_lower_condition(&p, bank, grid);
    let verdict = match (bessel.is_some(), lower.is_some()) {
        (true, true) => Verdict::CertifiedStable,
        (true, false) => Verdict::BesselOnly,
        _ => {
            let fs = frame_function_samples(bank, DIVERGENCE_JMAX, grid)?;
            let flagged = (5..=fs.per_level_sup.len()).any(|j| diverges(&fs.per_level_sup[..j]));
            if flagged {
                Verdict::DivergenceDetected
            } else {
                Verdict::Unverified
            }
        }
    };
    Ok(StabilityCertificate {
        n,
        p_taps: p,
        bessel,
        lower,
        verdict,
    })
}
