//! Time and frequency spreads of filters.
//!
//! Frequency integrals are evaluated in closed form from the autocorrelation `r`, using
//! `|x̂(ξ)|² = r(0) + 2Σ_{d≥1} r(d)cos(2πdξ)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{AtrousError, Result};
use crate::sequences::{pairwise_sum, FiniteSequence};
use crate::spectrum::{autocorrelation, eval_ft};

/// Where the frequency spread is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpreadMode {
    /// About `ξ = 0` over `[−1/2, 1/2]`.
    Lowpass,
    /// About the centroid of `|x̂|²` on `[0, 1/2]`, one-sided.
    Bandpass,
    /// About `ξ = 1/2`.
    Highpass,
}

impl SpreadMode {
    /// Picks the mode from the location of the peak of `|x̂|²` on `[0, 1/2]`.
    pub fn auto(x: &FiniteSequence) -> SpreadMode {
        let n = 2048;
        let (arg, _) = (0..=n / 2)
            .map(|k| {
                let xi = k as f64 / n as f64;
                (xi, eval_ft(x, xi).norm_sqr())
            })
            .fold((0.0, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 + 1e-12 { c } else { acc });
        if arg <= 1e-3 {
            SpreadMode::Lowpass
        } else if arg >= 0.5 - 1e-3 {
            SpreadMode::Highpass
        } else {
            SpreadMode::Bandpass
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TFStats {
    /// Time centroid (index units).
    pub n0: f64,
    pub sigma_n2: f64,
    /// Frequency centroid (radians).
    pub omega0: f64,
    /// Frequency spread (radians²).
    pub sigma_w2: f64,
    pub product: f64,
    pub mode: SpreadMode,
}

/// `(n₀, σ_n²)` with `n₀ = Σ n|x(n)|²/‖x‖²` and `σ_n² = Σ (n−n₀)²|x(n)|²/‖x‖²`.
pub fn time_spread(x: &FiniteSequence) -> Result<(f64, f64)> {
    let e = x.norm_sq();
    if e == 0.0 {
        return Err(AtrousError::ZeroSequence);
    }
    let w: Vec<f64> = x.taps().iter().map(|v| v * v).collect();
    let first: Vec<f64> = w.iter().enumerate().map(|(i, v)| i as f64 * v).collect();
    let rel = pairwise_sum(&first) / e;
    let second: Vec<f64> = w
        .iter()
        .enumerate()
        .map(|(i, v)| (i as f64 - rel).powi(2) * v)
        .collect();
    Ok((x.offset() as f64 + rel, pairwise_sum(&second) / e))
}

/// One-sided moments `∫₀^{1/2} ξᵏ|x̂|² dξ` for `k = 1, 2`, and the two-sided second moment.
fn moments(r: &[f64]) -> (f64, f64, f64) {
    let m = (r.len() - 1) / 2;
    let r0 = r[m];
    let mut one = vec![r0 / 8.0];
    let mut two = vec![r0 / 24.0];
    let mut full = vec![r0 / 12.0];
    for d in 1..=m {
        let rd = r[m + d];
        let dd = (d * d) as f64;
        let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
        one.push(2.0 * rd * (sign - 1.0) / (4.0 * PI * PI * dd));
        two.push(2.0 * rd * sign / (4.0 * PI * PI * dd));
        full.push(2.0 * rd * sign / (2.0 * PI * PI * dd));
    }
    (pairwise_sum(&one), pairwise_sum(&two), pairwise_sum(&full))
}

/// `(ω₀, σ_ω²)` in the given mode.
pub fn freq_spread_mode(x: &FiniteSequence, mode: SpreadMode) -> Result<(f64, f64)> {
    let e = x.norm_sq();
    if e == 0.0 {
        return Err(AtrousError::ZeroSequence);
    }
    let tau2 = 4.0 * PI * PI;
    match mode {
        SpreadMode::Lowpass => {
            let (_, _, full) = moments(&autocorrelation(x));
            Ok((0.0, tau2 * full / e))
        }
        SpreadMode::Highpass => {
            let (_, _, full) = moments(&autocorrelation(&x.modulate_half()));
            Ok((PI, tau2 * full / e))
        }
        SpreadMode::Bandpass => {
            let (i1, i2, _) = moments(&autocorrelation(x));
            let c = 2.0 * i1 / e;
            let spread = 2.0 * (i2 - 2.0 * c * i1 + c * c * e / 2.0);
            Ok((2.0 * PI * c, tau2 * spread / e))
        }
    }
}

/// `(ω₀, σ_ω²)`: the centered formula when `bandpass` is false, the one-sided centroid otherwise.
pub fn freq_spread(x: &FiniteSequence, bandpass: bool) -> Result<(f64, f64)> {
    freq_spread_mode(
        x,
        if bandpass {
            SpreadMode::Bandpass
        } else {
            SpreadMode::Lowpass
        },
    )
}

pub fn tf_stats(x: &FiniteSequence, mode: SpreadMode) -> Result<TFStats> {
    let (n0, sigma_n2) = time_spread(x)?;
    let (omega0, sigma_w2) = freq_spread_mode(x, mode)?;
    Ok(TFStats {
        n0,
        sigma_n2,
        omega0,
        sigma_w2,
        product: sigma_n2 * sigma_w2,
        mode,
    })
}
