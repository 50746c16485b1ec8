use super::{analyze_with, synthesize_with, CoefficientPyramid, FilterBank, MAX_DEPTH};
use crate::error::{AtrousError, Result};
use crate::sequences::FiniteSequence;

/// Result of the frame algorithm with its residual history.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub signal: FiniteSequence,
    pub iterations: usize,
    /// `‖pyr − F_J xₙ‖ / ‖pyr‖` for `n = 0, 1, …`.
    pub residuals: Vec<f64>,
}

impl Reconstruction {
    /// Ratios of consecutive residuals.
    pub fn contraction_factors(&self) -> Vec<f64> {
        self.residuals.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

/// Inverts `F_J` on its range by `xₙ₊₁ = xₙ + 2/(A+B)·F_J*(pyr − F_J xₙ)`.
pub fn frame_reconstruct(
    bank: &FilterBank,
    pyr: &CoefficientPyramid,
    a: f64,
    b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<FiniteSequence> {
    frame_reconstruct_traced(bank, pyr, a, b, tol, max_iter).map(|r| r.signal)
}

/// [`frame_reconstruct`] returning the residual history.
pub fn frame_reconstruct_traced(
    bank: &FilterBank,
    pyr: &CoefficientPyramid,
    a: f64,
    b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Reconstruction> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && a <= b) {
        return Err(AtrousError::BadBounds { a, b });
    }
    if pyr.branches() != bank.num_highpass() {
        return Err(AtrousError::PyramidShape(format!(
            "pyramid has {} branches per level, bank has {}",
            pyr.branches(),
            bank.num_highpass()
        )));
    }
    if pyr.order() > MAX_DEPTH {
        return Err(AtrousError::DepthLimit {
            requested: pyr.order(),
            max: MAX_DEPTH,
        });
    }
    let norm = pyr.norm();
    if norm == 0.0 {
        return Ok(Reconstruction {
            signal: FiniteSequence::zero(),
            iterations: 0,
            residuals: vec![0.0],
        });
    }
    let filters = bank.iterated_filters(pyr.order());
    let lambda = 2.0 / (a + b);
    let mut x = FiniteSequence::zero();
    let mut residuals = Vec::new();
    for it in 0..=max_iter {
        let r = pyr.sub(&analyze_with(&filters, &x))?;
        let rel = r.norm() / norm;
        residuals.push(rel);
        if rel <= tol {
            return Ok(Reconstruction {
                signal: x,
                iterations: it,
                residuals,
            });
        }
        if it == max_iter {
            return Err(AtrousError::NoConvergence {
                iterations: max_iter,
                residual: rel,
            });
        }
        let step = synthesize_with(&filters, &r)?;
        x = x.add_scaled(&step, lambda);
    }
    unreachable!()
}
