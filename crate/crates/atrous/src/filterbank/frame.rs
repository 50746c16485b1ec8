//! Frame functions, certified frame bounds and related diagnostics.

use serde::{Deserialize, Serialize};

use super::{check_order, FilterBank, MAX_DEPTH};
use crate::error::{AtrousError, Result};
use crate::sequences::{pairwise_dot, FiniteSequence};
use crate::spectrum::{
    autocorrelation, certify_samples, eval_ft, min_max, power_grid, CertifiedInterval, GridSpec,
    TrigBounds,
};

/// Which frame function a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameOrder {
    Finite { order: usize },
    TruncatedInfinite { jmax: usize, levels_computed: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailFlag {
    Clear,
    DivergenceDetected,
}

/// Certified frame bounds of a finite or truncated infinite bank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub order: FrameOrder,
    /// Enclosure of the essential infimum.
    pub a: CertifiedInterval,
    /// Enclosure of the essential supremum.
    pub b: CertifiedInterval,
    /// Sampled `sup Σ_ℓ |ĝˡ_j|²` for each level.
    pub per_level_sup: Vec<f64>,
    /// Certified upper bound on `sup |Φ − 1|`.
    pub parseval_deviation: f64,
    pub tail_flag: TailFlag,
}

impl FrameReport {
    /// Sampled lower frame bound.
    pub fn a_estimate(&self) -> f64 {
        self.a.hi
    }

    /// Sampled upper frame bound.
    pub fn b_estimate(&self) -> f64 {
        self.b.lo
    }

    /// Certified `(A, B)`: a lower bound of the infimum and an upper bound of the supremum.
    pub fn certified_bounds(&self) -> (f64, f64) {
        (self.a.lo, self.b.hi)
    }
}

/// Grid samples of the order-`J` frame function and its parts.
#[derive(Debug, Clone)]
pub struct FrameSamples {
    pub grid: GridSpec,
    /// `|ĥ_J|² + Σ_{j≤J} Σ_ℓ |ĝˡ_j|²`.
    pub phi: Vec<f64>,
    /// `Σ_{j≤J} Σ_ℓ |ĝˡ_j|²`.
    pub partial: Vec<f64>,
    /// `|ĥ_J|²`.
    pub lowpass_power: Vec<f64>,
    /// Sampled maximum of `Σ_ℓ |ĝˡ_j|²` per level.
    pub per_level_sup: Vec<f64>,
}

/// Samples of the frame function, using `ĥ_j(k/N) = Π_{i<j} ĥ(2ⁱk/N)` on the grid.
///
/// Only `N ≥` filter length is needed for the samples themselves.
pub fn frame_function_samples(bank: &FilterBank, order: usize, grid: GridSpec) -> Result<FrameSamples> {
    let n = grid.n;
    let h2 = power_grid(bank.lowpass(), grid)?;
    let g2 = bank
        .highpass()
        .iter()
        .map(|g| power_grid(g, grid))
        .collect::<Result<Vec<_>>>()?;
    let mut hj = vec![1.0; n];
    let mut partial = vec![0.0; n];
    let mut per_level_sup = Vec::with_capacity(order);
    for j in 1..=order {
        let s = pow2_mod(j - 1, n);
        let mut level_max = 0.0f64;
        for m in 0..n {
            let idx = (m * s) % n;
            let level: f64 = g2.iter().map(|g| g[idx]).sum::<f64>() * hj[m];
            partial[m] += level;
            level_max = level_max.max(level);
            hj[m] *= h2[idx];
        }
        per_level_sup.push(level_max);
    }
    let phi = partial.iter().zip(&hj).map(|(a, b)| a + b).collect();
    Ok(FrameSamples {
        grid,
        phi,
        partial,
        lowpass_power: hj,
        per_level_sup,
    })
}

fn pow2_mod(e: usize, n: usize) -> usize {
    if e >= 63 {
        0
    } else {
        ((1u64 << e) % n as u64) as usize
    }
}

fn parseval_deviation(a: &CertifiedInterval, b: &CertifiedInterval) -> f64 {
    (b.hi - 1.0).abs().max((1.0 - a.lo).abs())
}

/// Certified bounds of `Φ_J = |ĥ_J|² + Σ_{j≤J} Σ_ℓ |ĝˡ_j|²`.
///
/// The grid is doubled until it exceeds twice the largest iterated support.
pub fn frame_bounds(bank: &FilterBank, order: usize, grid: GridSpec) -> Result<FrameReport> {
    check_order(order, MAX_DEPTH)?;
    let max_len = bank.max_support(order);
    let grid = grid.doubled_past(2 * max_len)?;
    let fs = frame_function_samples(bank, order, grid)?;
    let range = certify_samples(&fs.phi, max_len - 1, grid)?;
    Ok(FrameReport {
        order: FrameOrder::Finite { order },
        parseval_deviation: parseval_deviation(&range.inf, &range.sup),
        a: range.inf,
        b: range.sup,
        per_level_sup: fs.per_level_sup,
        tail_flag: TailFlag::Clear,
    })
}

/// Slope test on the last five per-level sups.
pub(crate) fn diverges(per_level_sup: &[f64]) -> bool {
    let n = per_level_sup.len();
    if n < 5 {
        return false;
    }
    let tail = &per_level_sup[n - 5..];
    let ys: Vec<f64> = tail.iter().map(|v| v.max(f64::MIN_POSITIVE).ln()).collect();
    let xm = 2.0;
    let ym = ys.iter().sum::<f64>() / 5.0;
    let num: f64 = ys.iter().enumerate().map(|(i, y)| (i as f64 - xm) * (y - ym)).sum();
    num >= 0.0 && per_level_sup[n - 1] > 10.0 * per_level_sup[0]
}

/// Partial sums `Σ_{j≤Jmax} Σ_ℓ |ĝˡ_j|²` of the infinite frame function.
///
/// The upper side is certified over 𝕋. Every `ĝˡ_j` vanishes at 0, so the lower side is the
/// certified infimum over the resolved band `2^{−(levels+1)} ≤ |ξ| ≤ 1/2`. Levels stop early
/// once the per-level sups are flagged as diverging.
pub fn infinite_frame_bounds(bank: &FilterBank, jmax: usize, grid: GridSpec) -> Result<FrameReport> {
    check_order(jmax, MAX_DEPTH)?;
    let mut scan = Vec::with_capacity(jmax);
    let mut flag = TailFlag::Clear;
    {
        let fs = frame_function_samples(bank, jmax, grid)?;
        for &s in &fs.per_level_sup {
            scan.push(s);
            if diverges(&scan) {
                flag = TailFlag::DivergenceDetected;
                break;
            }
        }
    }
    let levels = scan.len();
    let max_len = (1..=levels).map(|j| bank.highpass_support(j)).max().unwrap();
    let cert = grid.doubled_past((2 * max_len).max(1 << (levels + 1)))?;
    let fs = frame_function_samples(bank, levels, cert)?;
    let bounds = TrigBounds::from_samples(&fs.partial, max_len - 1);
    let pad = bounds.pad(cert);
    let (_, sup) = min_max(&fs.partial);
    let n = cert.n;
    let cut = n >> (levels + 1);
    let band_min = (cut..=n - cut)
        .map(|k| fs.partial[k])
        .fold(f64::INFINITY, f64::min);
    let a = CertifiedInterval::for_inf(band_min, pad, cert);
    let b = CertifiedInterval::for_sup(sup, pad, cert);
    let per_level_sup = if flag == TailFlag::DivergenceDetected {
        scan
    } else {
        fs.per_level_sup
    };
    Ok(FrameReport {
        order: FrameOrder::TruncatedInfinite {
            jmax,
            levels_computed: levels,
        },
        parseval_deviation: parseval_deviation(&a, &b),
        a,
        b,
        per_level_sup,
        tail_flag: flag,
    })
}

/// Partial sums `Σ_{j≤J} Σ_ℓ |ĝˡ_j(ξ)|²` at one frequency, for `J = 1..=jmax`.
pub fn frame_function_at(bank: &FilterBank, xi: f64, jmax: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(jmax);
    let mut hmod2 = 1.0;
    let mut t = xi.rem_euclid(1.0);
    let mut acc = 0.0;
    for _ in 0..jmax {
        let level: f64 = bank
            .highpass()
            .iter()
            .map(|g| eval_ft(g, t).norm_sqr())
            .sum();
        acc += level * hmod2;
        out.push(acc);
        hmod2 *= eval_ft(bank.lowpass(), t).norm_sqr();
        t = (2.0 * t).rem_euclid(1.0);
    }
    out
}

/// Certified `sup |ĥ|² + Σ|ĝˡ|² − 1|` over 𝕋.
pub fn check_perfect_reconstruction(bank: &FilterBank, grid: GridSpec) -> f64 {
    let max_len = bank.max_support(1);
    let grid = grid
        .doubled_past(2 * max_len)
        .expect("single-level filters fit the maximum grid");
    let fs = frame_function_samples(bank, 1, grid).expect("grid fits the filters");
    let range = certify_samples(&fs.phi, max_len - 1, grid).expect("grid checked");
    parseval_deviation(&range.inf, &range.sup)
}

/// Finite-order bounds implied by infinite bounds `(A, B)`: `(min{A, A/B}, max{B/A, B})`.
pub fn bound_propagation(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && a <= b) {
        return Err(AtrousError::BadBounds { a, b });
    }
    Ok((a.min(a / b), (b / a).max(b)))
}

/// `‖x * h̄_J‖` for `J = 1..=jmax`.
///
/// Uses `‖x * h̄_J‖² = Σ_d r_x(d)·r_{h_J}(d)` over the lags of `x`, with the autocorrelation of
/// `h_J` restricted to those lags by the cascade `r_{h_J}(d) = Σ_e r_h(d − 2e)·r_{h_{J−1}}(e)`.
pub fn lowpass_decay(bank: &FilterBank, x: &FiniteSequence, jmax: usize) -> Result<Vec<f64>> {
    check_order(jmax, MAX_DEPTH)?;
    let rh = autocorrelation(bank.lowpass());
    let m = (rh.len() - 1) / 2;
    let rx = autocorrelation(x);
    let w = (rx.len() - 1) / 2;
    let win = w.max(m) as i64;
    let width = (2 * win + 1) as usize;
    let mut c = vec![0.0; width];
    c[win as usize] = 1.0;
    let mut out = Vec::with_capacity(jmax);
    let mut terms = Vec::new();
    for _ in 0..jmax {
        let mut next = vec![0.0; width];
        for d in -win..=win {
            terms.clear();
            for e in -win..=win {
                let lag = d - 2 * e;
                if lag.unsigned_abs() as usize <= m {
                    terms.push(rh[(lag + m as i64) as usize] * c[(e + win) as usize]);
                }
            }
            next[(d + win) as usize] = crate::sequences::pairwise_sum(&terms);
        }
        c = next;
        let lo = (win - w as i64) as usize;
        let e2 = pairwise_dot(&rx, &c[lo..lo + rx.len()]);
        out.push(e2.max(0.0).sqrt());
    }
    Ok(out)
}
