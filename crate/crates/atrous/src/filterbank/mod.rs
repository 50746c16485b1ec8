//! Filter banks, iterated filters and the finite-order analysis/synthesis operators.

mod certify;
mod frame;
mod reconstruct;

pub use certify::{
    certify_stability, certify_stability_on, check_bessel_condition, check_lower_condition,
    factor_haar_type, BesselCondition, LowerCondition, StabilityCertificate, Verdict,
};
pub use frame::{
    bound_propagation, check_perfect_reconstruction, frame_bounds, frame_function_at,
    frame_function_samples, infinite_frame_bounds, lowpass_decay, FrameOrder, FrameReport,
    FrameSamples, TailFlag,
};
pub use reconstruct::{frame_reconstruct, frame_reconstruct_traced, Reconstruction};

use serde::{Deserialize, Serialize};

use crate::error::{AtrousError, Result};
use crate::sequences::{pairwise_sum, FiniteSequence};
use crate::spectrum::eval_ft;

/// Maximum order for 1-D analysis.
pub const MAX_DEPTH: usize = 24;

/// Tolerance on `ĥ(0) = 1`, `ĥ(1/2) = 0` and `ĝ(0) = 0`.
pub const BANK_TOLERANCE: f64 = 1e-6;

/// A low-pass filter `h` with high-pass filters `g¹..gᴸ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterBank {
    name: String,
    lowpass: FiniteSequence,
    highpass: Vec<FiniteSequence>,
}

impl FilterBank {
    /// Validates `ĥ(0) ≈ 1`, `ĥ(1/2) ≈ 0` and `ĝˡ(0) ≈ 0`.
    pub fn new(
        name: impl Into<String>,
        lowpass: FiniteSequence,
        highpass: Vec<FiniteSequence>,
    ) -> Result<Self> {
        if highpass.is_empty() {
            return Err(AtrousError::InvalidBank("no high-pass filters".into()));
        }
        let all = std::iter::once(&lowpass).chain(&highpass);
        if all.flat_map(|s| s.taps()).any(|v| !v.is_finite()) {
            return Err(AtrousError::NonFinite);
        }
        let h0 = eval_ft(&lowpass, 0.0);
        let hh = eval_ft(&lowpass, 0.5);
        if (h0 - 1.0).norm() > BANK_TOLERANCE {
            return Err(AtrousError::NotLowPass(format!("ĥ(0) = {}", h0.re)));
        }
        if hh.norm() > BANK_TOLERANCE {
            return Err(AtrousError::NotLowPass(format!("|ĥ(1/2)| = {:e}", hh.norm())));
        }
        for (l, g) in highpass.iter().enumerate() {
            let g0 = eval_ft(g, 0.0).norm();
            if g0 > BANK_TOLERANCE {
                return Err(AtrousError::InvalidBank(format!(
                    "|ĝ{}(0)| = {:e} is not zero",
                    l + 1,
                    g0
                )));
            }
        }
        Ok(FilterBank {
            name: name.into(),
            lowpass,
            highpass,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lowpass(&self) -> &FiniteSequence {
        &self.lowpass
    }

    pub fn highpass(&self) -> &[FiniteSequence] {
        &self.highpass
    }

    /// Number of high-pass filters `L`.
    pub fn num_highpass(&self) -> usize {
        self.highpass.len()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same bank with `gˡ` translated by `k`.
    pub fn with_translated_highpass(&self, l: usize, k: i64) -> Self {
        let mut b = self.clone();
        b.highpass[l] = b.highpass[l].translate(k);
        b
    }

    /// `h_j`.
    pub fn iterated_lowpass(&self, j: usize) -> FiniteSequence {
        iterated_lowpass(&self.lowpass, j)
    }

    /// `gˡ_j` for `l` in `0..L`.
    pub fn iterated_highpass(&self, l: usize, j: usize) -> FiniteSequence {
        iterated_highpass(&self.lowpass, &self.highpass[l], j)
    }

    /// All iterated filters of order `J`.
    pub fn iterated_filters(&self, order: usize) -> IteratedFilters {
        let mut h_prev = FiniteSequence::delta();
        let mut highpass = Vec::with_capacity(order);
        for j in 1..=order {
            let m = (j - 1) as u32;
            let level: Vec<FiniteSequence> = self
                .highpass
                .iter()
                .map(|g| h_prev.convolve(&g.upsample(m)))
                .collect();
            highpass.push(level);
            h_prev = h_prev.convolve(&self.lowpass.upsample(m));
        }
        IteratedFilters {
            lowpass: h_prev,
            highpass,
        }
    }

    /// Upper bound on the support length of `h_j`.
    pub fn lowpass_support(&self, j: usize) -> usize {
        ((1usize << j) - 1) * (self.lowpass.len() - 1) + 1
    }

    /// Upper bound on the support length of every `gˡ_j`.
    pub fn highpass_support(&self, j: usize) -> usize {
        let glen = self.highpass.iter().map(|g| g.len()).max().unwrap_or(1);
        self.lowpass_support(j - 1) + (1usize << (j - 1)) * (glen - 1)
    }

    /// Largest support among the filters of order `J`.
    pub fn max_support(&self, order: usize) -> usize {
        let hp = (1..=order).map(|j| self.highpass_support(j)).max().unwrap_or(1);
        hp.max(self.lowpass_support(order))
    }
}

/// Iterated filters of one order: `h_J` and `gˡ_j` for `j ≤ J`.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratedFilters {
    pub lowpass: FiniteSequence,
    /// `highpass[j−1][ℓ−1] = gˡ_j`.
    pub highpass: Vec<Vec<FiniteSequence>>,
}

impl IteratedFilters {
    pub fn order(&self) -> usize {
        self.highpass.len()
    }

    /// Every filter whose squared modulus enters `Φ_J`.
    pub fn all(&self) -> Vec<FiniteSequence> {
        let mut v: Vec<FiniteSequence> = self.highpass.iter().flatten().cloned().collect();
        v.push(self.lowpass.clone());
        v
    }
}

/// `h_j = h * Uh * ⋯ * U^{j−1}h`, with `h₀ = δ`.
pub fn iterated_lowpass(h: &FiniteSequence, j: usize) -> FiniteSequence {
    (0..j).fold(FiniteSequence::delta(), |acc, k| {
        acc.convolve(&h.upsample(k as u32))
    })
}

/// `g_j = h_{j−1} * U^{j−1}g`.
pub fn iterated_highpass(h: &FiniteSequence, g: &FiniteSequence, j: usize) -> FiniteSequence {
    assert!(j >= 1, "high-pass order starts at 1");
    iterated_lowpass(h, j - 1).convolve(&g.upsample((j - 1) as u32))
}

/// Output of the order-`J` analysis operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPyramid {
    order: usize,
    /// `details[j−1][ℓ−1] = x * ḡˡ_j`.
    details: Vec<Vec<FiniteSequence>>,
    approximation: FiniteSequence,
}

impl CoefficientPyramid {
    pub fn new(details: Vec<Vec<FiniteSequence>>, approximation: FiniteSequence) -> Result<Self> {
        if details.is_empty() {
            return Err(AtrousError::PyramidShape("order must be positive".into()));
        }
        let l = details[0].len();
        if l == 0 || details.iter().any(|d| d.len() != l) {
            return Err(AtrousError::PyramidShape(
                "every level needs the same number of branches".into(),
            ));
        }
        Ok(CoefficientPyramid {
            order: details.len(),
            details,
            approximation,
        })
    }

    /// An all-zero pyramid of the given shape.
    pub fn zeros(order: usize, branches: usize) -> Self {
        CoefficientPyramid {
            order,
            details: vec![vec![FiniteSequence::zero(); branches]; order],
            approximation: FiniteSequence::zero(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn branches(&self) -> usize {
        self.details[0].len()
    }

    /// Detail branch `(j, ℓ)` with 1-based indices.
    pub fn detail(&self, j: usize, l: usize) -> &FiniteSequence {
        &self.details[j - 1][l - 1]
    }

    pub fn details(&self) -> &[Vec<FiniteSequence>] {
        &self.details
    }

    pub fn approximation(&self) -> &FiniteSequence {
        &self.approximation
    }

    fn members(&self) -> impl Iterator<Item = &FiniteSequence> {
        self.details.iter().flatten().chain(std::iter::once(&self.approximation))
    }

    /// Sum of squared norms of all branches.
    pub fn energy(&self) -> f64 {
        let e: Vec<f64> = self.members().map(|s| s.norm_sq()).collect();
        pairwise_sum(&e)
    }

    pub fn norm(&self) -> f64 {
        self.energy().sqrt()
    }

    pub fn dot(&self, other: &CoefficientPyramid) -> f64 {
        let d: Vec<f64> = self
            .members()
            .zip(other.members())
            .map(|(a, b)| a.dot(b))
            .collect();
        pairwise_sum(&d)
    }

    fn same_shape(&self, other: &CoefficientPyramid) -> Result<()> {
        if self.order != other.order || self.branches() != other.branches() {
            return Err(AtrousError::PyramidShape(format!(
                "{}x{} vs {}x{}",
                self.order,
                self.branches(),
                other.order,
                other.branches()
            )));
        }
        Ok(())
    }

    pub fn sub(&self, other: &CoefficientPyramid) -> Result<CoefficientPyramid> {
        self.same_shape(other)?;
        Ok(self.map2(other, |a, b| a.sub(b)))
    }

    fn map2(
        &self,
        other: &CoefficientPyramid,
        f: impl Fn(&FiniteSequence, &FiniteSequence) -> FiniteSequence,
    ) -> CoefficientPyramid {
        CoefficientPyramid {
            order: self.order,
            details: self
                .details
                .iter()
                .zip(&other.details)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
            approximation: f(&self.approximation, &other.approximation),
        }
    }

    /// Every branch translated by `k`.
    pub fn translate(&self, k: i64) -> CoefficientPyramid {
        CoefficientPyramid {
            order: self.order,
            details: self
                .details
                .iter()
                .map(|lv| lv.iter().map(|s| s.translate(k)).collect())
                .collect(),
            approximation: self.approximation.translate(k),
        }
    }
}

fn check_order(order: usize, max: usize) -> Result<()> {
    if order == 0 || order > max {
        return Err(AtrousError::DepthLimit {
            requested: order,
            max,
        });
    }
    Ok(())
}

/// `F_J x`: details `x * ḡˡ_j` and approximation `x * h̄_J`.
pub fn analyze(bank: &FilterBank, x: &FiniteSequence, order: usize) -> Result<CoefficientPyramid> {
    check_order(order, MAX_DEPTH)?;
    let filters = bank.iterated_filters(order);
    Ok(analyze_with(&filters, x))
}

/// Analysis with precomputed iterated filters.
pub fn analyze_with(filters: &IteratedFilters, x: &FiniteSequence) -> CoefficientPyramid {
    let details = filters
        .highpass
        .iter()
        .map(|lv| lv.iter().map(|g| x.convolve(&g.involute())).collect())
        .collect();
    CoefficientPyramid {
        order: filters.order(),
        details,
        approximation: x.convolve(&filters.lowpass.involute()),
    }
}

/// `F_J* c = c_{J+1} * h_J + Σ c_{j,ℓ} * gˡ_j`.
pub fn synthesize(bank: &FilterBank, pyr: &CoefficientPyramid) -> Result<FiniteSequence> {
    if pyr.branches() != bank.num_highpass() {
        return Err(AtrousError::PyramidShape(format!(
            "pyramid has {} branches per level, bank has {}",
            pyr.branches(),
            bank.num_highpass()
        )));
    }
    check_order(pyr.order(), MAX_DEPTH)?;
    let filters = bank.iterated_filters(pyr.order());
    synthesize_with(&filters, pyr)
}

/// Synthesis with precomputed iterated filters.
pub fn synthesize_with(filters: &IteratedFilters, pyr: &CoefficientPyramid) -> Result<FiniteSequence> {
    if pyr.order() != filters.order()
        || pyr.branches() != filters.highpass.first().map_or(0, |l| l.len())
    {
        return Err(AtrousError::PyramidShape("pyramid does not match filters".into()));
    }
    let mut parts: Vec<FiniteSequence> = Vec::new();
    for (lv_c, lv_g) in pyr.details.iter().zip(&filters.highpass) {
        for (c, g) in lv_c.iter().zip(lv_g) {
            parts.push(c.convolve(g));
        }
    }
    parts.push(pyr.approximation.convolve(&filters.lowpass));
    Ok(sum_sequences(&parts))
}

/// Tap-wise sum, each output tap pairwise-summed across the inputs.
pub fn sum_sequences(parts: &[FiniteSequence]) -> FiniteSequence {
    let live: Vec<&FiniteSequence> = parts.iter().filter(|p| !p.is_zero()).collect();
    if live.is_empty() {
        return FiniteSequence::zero();
    }
    let lo = live.iter().map(|p| p.offset()).min().unwrap();
    let hi = live.iter().map(|p| p.last_index()).max().unwrap();
    let mut col = Vec::with_capacity(live.len());
    let taps = (lo..=hi)
        .map(|k| {
            col.clear();
            col.extend(live.iter().map(|p| p.get(k)));
            pairwise_sum(&col)
        })
        .collect();
    FiniteSequence::new(lo, taps)
}
