use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::poly::CosinePolynomial;
use crate::error::{AtrousError, Result};

/// Largest condition number accepted for the interpolation and Bezout systems.
pub const MAX_CONDITION: f64 = 1e12;

/// 2-norm condition number from the singular values.
pub(crate) fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Solves a square system, rejecting it when the condition number exceeds [`MAX_CONDITION`].
pub(crate) fn solve_checked(m: DMatrix<f64>, rhs: DVector<f64>) -> std::result::Result<DVector<f64>, f64> {
    let cond = condition_number(&m);
    if !(cond <= MAX_CONDITION) {
        return Err(cond);
    }
    m.lu().solve(&rhs).ok_or(f64::INFINITY)
}

/// Cosine polynomial of degree `K` through `K+1` points `(ξᵢ, vᵢ)` with distinct `ξᵢ ∈ [0, 1/2]`.
pub fn interp_design(k: usize, constraints: &[(f64, f64)]) -> Result<CosinePolynomial> {
    if constraints.len() != k + 1 {
        return Err(AtrousError::BadParams(format!(
            "need {} constraints, got {}",
            k + 1,
            constraints.len()
        )));
    }
    if constraints
        .iter()
        .any(|(xi, v)| !(xi.is_finite() && v.is_finite()) || *xi < 0.0 || *xi > 0.5)
    {
        return Err(AtrousError::BadParams("constraint frequencies must lie in [0, 1/2]".into()));
    }
    let m = DMatrix::from_fn(k + 1, k + 1, |i, j| {
        (2.0 * PI * j as f64 * constraints[i].0).cos()
    });
    let v = DVector::from_iterator(k + 1, constraints.iter().map(|c| c.1));
    let b = solve_checked(m, v).map_err(AtrousError::SingularSystem)?;
    Ok(CosinePolynomial::new(b.iter().cloned().collect()))
}
