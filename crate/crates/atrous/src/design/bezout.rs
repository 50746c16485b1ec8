use nalgebra::{DMatrix, DVector};

use super::interp::solve_checked;
use super::poly::ZPolynomial;
use crate::error::{AtrousError, Result};

/// Unique `(p, q)` with `deg p ≤ d1`, `deg q ≤ d2` and `f1·p + f2·q = 1`.
///
/// Requires `deg f1 + d1 = deg f2 + d2 = D` and `d1 + d2 + 2 = D + 1` (a square system).
pub fn bezout_solve(
    f1: &ZPolynomial,
    f2: &ZPolynomial,
    d1: usize,
    d2: usize,
) -> Result<(ZPolynomial, ZPolynomial)> {
    let total = f1.degree() + d1;
    if f2.degree() + d2 != total {
        return Err(AtrousError::BadParams(format!(
            "degree mismatch: {} + {} vs {} + {}",
            f1.degree(),
            d1,
            f2.degree(),
            d2
        )));
    }
    let unknowns = d1 + d2 + 2;
    if unknowns != total + 1 {
        return Err(AtrousError::BadParams(format!(
            "{unknowns} unknowns for {} equations",
            total + 1
        )));
    }
    let mut m = DMatrix::zeros(total + 1, unknowns);
    for i in 0..=d1 {
        for (k, c) in f1.coeffs().iter().enumerate() {
            m[(i + k, i)] = *c;
        }
    }
    for i in 0..=d2 {
        for (k, c) in f2.coeffs().iter().enumerate() {
            m[(i + k, d1 + 1 + i)] = *c;
        }
    }
    let mut rhs = DVector::zeros(total + 1);
    rhs[0] = 1.0;
    let sol = solve_checked(m, rhs).map_err(AtrousError::NotCoprime)?;
    let p = ZPolynomial::new(sol.iter().take(d1 + 1).cloned().collect());
    let q = ZPolynomial::new(sol.iter().skip(d1 + 1).cloned().collect());
    Ok((p, q))
}

/// Coefficient max-norm of `f1·p + f2·q − 1`.
pub fn bezout_residual(f1: &ZPolynomial, f2: &ZPolynomial, p: &ZPolynomial, q: &ZPolynomial) -> f64 {
    f1.mul(p)
        .add(&f2.mul(q))
        .sub(&ZPolynomial::constant(1.0))
        .max_abs_coeff()
}
