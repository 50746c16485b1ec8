use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{CosinePolynomial, ZPolynomial};
use crate::error::{AtrousError, Result};
use crate::sequences::FiniteSequence;
use crate::spectrum::eval_ft;

/// Band `|1 − |root|| ≤ UNIT_BAND` treated as the unit circle.
pub const UNIT_BAND: f64 = 1e-6;

/// Which root of each reciprocal pair a spectral factor keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    /// Roots inside the unit disk.
    Minimum,
    /// Roots outside the unit disk.
    Maximum,
}

fn horner(c: &[f64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &v| acc * x + v)
}

fn horner_deriv(c: &[f64], x: Complex64) -> Complex64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (i, &v)| acc * x + v * i as f64)
}

/// Roots of `Σ cᵢxⁱ` from companion-matrix eigenvalues, each refined by one Newton step.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    let mut zeros = 0;
    while c.len() > 1 && c[0] == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let n = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return roots;
    }
    let lead = c[n];
    let comp = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    for r in comp.complex_eigenvalues().iter() {
        let d = horner_deriv(&c, *r);
        let polished = if d.norm() > 1e-14 * lead.abs() {
            let step = horner(&c, *r) / d;
            if step.norm() < 1e-3 * (1.0 + r.norm()) {
                r - step
            } else {
                *r
            }
        } else {
            *r
        };
        roots.push(polished);
    }
    roots
}

/// Real coefficients (ascending) of `Π(x − rᵢ)`.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<f64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= v * r;
        }
        c = next;
    }
    c.iter().map(|v| v.re).collect()
}

/// Rescales `b` so `|b̂|² = target` at the largest sampled target value, then fixes the sign.
fn normalize(b: FiniteSequence, target: impl Fn(f64) -> f64) -> FiniteSequence {
    let (xi, t) = (0..=64)
        .map(|k| k as f64 / 128.0)
        .map(|xi| (xi, target(xi)))
        .fold((0.0, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
    if t <= 0.0 {
        return FiniteSequence::zero();
    }
    let scale = (t / eval_ft(&b, xi).norm_sqr()).sqrt();
    let b = b.scale(scale);
    normalize_sign(b)
}

/// `b̂(0) ≥ 0`; when `b̂(0)` vanishes, `b̂(1/2) ≥ 0`; when both vanish, the largest tap is positive.
pub fn normalize_sign(b: FiniteSequence) -> FiniteSequence {
    let tol = 1e-10 * b.l1_norm();
    let s0 = b.sum();
    let sh = eval_ft(&b, 0.5).re;
    let flip = if s0.abs() > tol {
        s0 < 0.0
    } else if sh.abs() > tol {
        sh < 0.0
    } else {
        let peak = b.taps().iter().fold(0.0f64, |m, &v| if v.abs() > m.abs() { v } else { m });
        peak < 0.0
    };
    if flip {
        b.scale(-1.0)
    } else {
        b
    }
}

/// Spectral factor `b` with `|b̂(ξ)|² = τ(ξ)`, minimum phase.
pub fn riesz_factor(tau: &CosinePolynomial) -> Result<FiniteSequence> {
    let k = tau.degree();
    let n = (16 * (k + 1)).next_power_of_two().max(1024);
    let min = (0..=n / 2)
        .map(|i| tau.eval(i as f64 / n as f64))
        .fold(f64::INFINITY, f64::min);
    if min < -1e-10 {
        return Err(AtrousError::NotNonnegative(min));
    }
    if tau.coeffs().iter().all(|c| *c == 0.0) {
        return Ok(FiniteSequence::zero());
    }
    if k == 0 {
        return Ok(FiniteSequence::delta().scale(tau.coeffs()[0].max(0.0).sqrt()));
    }
    let c = tau.coeffs();
    let laurent: Vec<f64> = (0..=2 * k)
        .map(|i| {
            let d = (i as i64 - k as i64).unsigned_abs() as usize;
            if d == 0 {
                c[0]
            } else {
                c[d] / 2.0
            }
        })
        .collect();
    let roots = poly_roots(&laurent);
    let mut chosen = Vec::with_capacity(k);
    let mut circle = Vec::new();
    for r in roots {
        let m = r.norm();
        if (1.0 - m).abs() <= UNIT_BAND {
            circle.push(r / m);
        } else if m < 1.0 {
            chosen.push(r);
        }
    }
    circle.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    let mut i = 0;
    while i < circle.len() {
        let mut j = i + 1;
        while j < circle.len() && (circle[j] - circle[i]).norm() <= UNIT_BAND {
            j += 1;
        }
        let cluster = &circle[i..j];
        if cluster.len() % 2 == 1 {
            return Err(AtrousError::OddCircleRoot(cluster[0].arg() / (2.0 * PI)));
        }
        let mean = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
        let unit = mean / mean.norm();
        chosen.extend(std::iter::repeat(unit).take(cluster.len() / 2));
        i = j;
    }
    if chosen.len() != k {
        return Err(AtrousError::OddCircleRoot(f64::NAN));
    }
    let b = FiniteSequence::new(0, poly_from_roots(&chosen));
    Ok(normalize(b, |xi| tau.eval(xi)))
}

/// Spectral factor of a nonnegative `f(z)`, `z = sin²(πξ)`, keeping the requested phase.
///
/// Each `z`-root `z₀` corresponds to the reciprocal pair of roots of `w² + (4z₀−2)w + 1`.
/// Roots at `z = 0` and `z = 1` give the double roots `w = 1` and `w = −1`; real roots in
/// `(0, 1)` lie on the circle and must have even multiplicity.
pub fn riesz_factor_z(f: &ZPolynomial, phase: Phase) -> Result<FiniteSequence> {
    let scale = f.max_abs_coeff();
    if scale == 0.0 {
        return Ok(FiniteSequence::zero());
    }
    let min = (0..=512)
        .map(|i| f.eval(i as f64 / 512.0))
        .fold(f64::INFINITY, f64::min);
    if min < -1e-10 * scale {
        return Err(AtrousError::NotNonnegative(min));
    }
    let mut chosen = Vec::new();
    let mut circle = Vec::new();
    for z in poly_roots(f.coeffs()) {
        let tol = 1e-12 * (1.0 + z.norm());
        if z.norm() <= tol {
            chosen.push(Complex64::new(1.0, 0.0));
        } else if (z - 1.0).norm() <= tol {
            chosen.push(Complex64::new(-1.0, 0.0));
        } else if z.im.abs() <= 1e-9 * (1.0 + z.norm()) && z.re > 0.0 && z.re < 1.0 {
            circle.push(z.re);
        } else {
            let b = Complex64::new(1.0, 0.0) - 2.0 * z;
            let s = 2.0 * (z * z - z).sqrt();
            let (w1, w2) = (b + s, b - s);
            let inside = if w1.norm() <= w2.norm() { w1 } else { w2 };
            let outside = if w1.norm() <= w2.norm() { w2 } else { w1 };
            chosen.push(match phase {
                Phase::Minimum => inside,
                Phase::Maximum => outside,
            });
        }
    }
    circle.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut i = 0;
    while i < circle.len() {
        let mut j = i + 1;
        while j < circle.len() && (circle[j] - circle[i]).abs() <= UNIT_BAND {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            return Err(AtrousError::OddCircleRoot(
                (circle[i].sqrt()).asin() / PI,
            ));
        }
        let z0 = circle[i..j].iter().sum::<f64>() / (j - i) as f64;
        let angle = (1.0 - 2.0 * z0).clamp(-1.0, 1.0).acos();
        for _ in 0..(j - i) / 2 {
            chosen.push(Complex64::from_polar(1.0, angle));
            chosen.push(Complex64::from_polar(1.0, -angle));
        }
        i = j;
    }
    let b = FiniteSequence::new(0, poly_from_roots(&chosen));
    Ok(normalize(b, |xi| f.eval((PI * xi).sin().powi(2))))
}
