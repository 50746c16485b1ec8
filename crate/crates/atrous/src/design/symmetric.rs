use serde::{Deserialize, Serialize};

use crate::error::{AtrousError, Result};
use crate::filterbank::FilterBank;
use crate::sequences::FiniteSequence;
use crate::spectrum::{certified_range, certify_samples, power_grid, GridSpec};

/// `p` of the symmetric family: degree 1 `(−a/2, 1+a, −a/2)`, degree 2 `(−b/2, −a/2, 1+a+b, −a/2, −b/2)`.
pub fn symmetric_p(params: &[f64]) -> Result<FiniteSequence> {
    if params.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(AtrousError::BadParams("parameters must be positive".into()));
    }
    match *params {
        [a] => Ok(FiniteSequence::new(-1, vec![-a / 2.0, 1.0 + a, -a / 2.0])),
        [a, b] => Ok(FiniteSequence::new(
            -2,
            vec![-b / 2.0, -a / 2.0, 1.0 + a + b, -a / 2.0, -b / 2.0],
        )),
        _ => Err(AtrousError::BadParams(format!(
            "expected 1 or 2 parameters, got {}",
            params.len()
        ))),
    }
}

/// Centers a sequence at `−⌊(len−1)/2⌋`.
pub fn center(x: &FiniteSequence) -> FiniteSequence {
    let target = -(((x.len() - 1) / 2) as i64);
    x.translate(target - x.offset())
}

/// `ĥ = [(1+e^{2πiξ})/2]ⁿ p̂`, centered, with `g = modulate_half(h)`.
pub fn symmetric_family(n: u32, params: &[f64]) -> Result<FilterBank> {
    if n == 0 {
        return Err(AtrousError::BadParams("n must be positive".into()));
    }
    let p = symmetric_p(params)?;
    let half = FiniteSequence::new(-1, vec![0.5, 0.5]);
    let h = center(&(0..n).fold(p, |acc, _| acc.convolve(&half)));
    let g = h.modulate_half();
    let label = params.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(",");
    FilterBank::new(format!("symmetric-n{n}-[{label}]"), h, vec![g])
}

/// Certified `sup|p̂|`.
pub fn certified_sup_p(params: &[f64], grid: GridSpec) -> Result<f64> {
    let p = symmetric_p(params)?;
    let g = grid.doubled_past(2 * p.len())?;
    let s = power_grid(&p, g)?;
    Ok(certify_samples(&s, p.len() - 1, g)?.sup.hi.sqrt())
}

/// Search box and stopping rule for [`optimize_symmetric`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricSearch {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub tol: f64,
    pub grid: GridSpec,
}

impl SymmetricSearch {
    /// Box `a ∈ (0, (2ⁿ−1)/2)` and, for degree 2, `b ∈ (0, 1/2]`.
    pub fn default_for(n: u32, degree: usize) -> Self {
        let amax = ((1u64 << n) as f64 - 1.0) / 2.0;
        let (lower, upper) = if degree == 1 {
            (vec![1e-6], vec![amax - 1e-6])
        } else {
            (vec![1e-6, 1e-6], vec![amax - 1e-6, 0.5])
        };
        SymmetricSearch {
            lower,
            upper,
            tol: 1e-9,
            grid: GridSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricOptimum {
    pub params: Vec<f64>,
    pub bank: FilterBank,
    /// Certified `sup Φ₁ / inf Φ₁`.
    pub ratio: f64,
}

/// Certified one-level ratio `sup(|ĥ|²+|ĝ|²) / inf(|ĥ|²+|ĝ|²)`; infinite when inadmissible.
pub fn symmetric_ratio(n: u32, params: &[f64], grid: GridSpec) -> f64 {
    let admissible = match certified_sup_p(params, grid) {
        Ok(s) => s < 2f64.powi(n as i32),
        Err(_) => false,
    };
    if !admissible {
        return f64::INFINITY;
    }
    let bank = match symmetric_family(n, params) {
        Ok(b) => b,
        Err(_) => return f64::INFINITY,
    };
    let terms = [bank.lowpass().clone(), bank.highpass()[0].clone()];
    let g = match grid.doubled_past(2 * bank.lowpass().len()) {
        Ok(g) => g,
        Err(_) => return f64::INFINITY,
    };
    match certified_range(&terms, g) {
        Ok(r) if r.inf.lo > 0.0 => r.sup.hi / r.inf.lo,
        _ => f64::INFINITY,
    }
}

fn golden(f: &mut dyn FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    if hi - lo <= tol {
        let x = 0.5 * (lo + hi);
        return (x, f(x));
    }
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Directions for the two-parameter line searches: axes, diagonals and shallow slopes.
const DIRECTIONS: [(f64, f64); 12] = [
    (1.0, 0.0),
    (0.0, 1.0),
    (1.0, 1.0),
    (1.0, -1.0),
    (1.0, 2.0),
    (2.0, 1.0),
    (1.0, -2.0),
    (2.0, -1.0),
    (1.0, 4.0),
    (4.0, 1.0),
    (1.0, -4.0),
    (4.0, -1.0),
];

/// Minimizes [`symmetric_ratio`] over the search box.
///
/// One parameter: golden-section search. Two parameters: golden-section line searches along a
/// fixed direction set, repeated until no direction improves.
pub fn optimize_symmetric(n: u32, degree: usize, search: &SymmetricSearch) -> Result<SymmetricOptimum> {
    if !(degree == 1 || degree == 2) || search.lower.len() != degree || search.upper.len() != degree
    {
        return Err(AtrousError::BadParams("degree must be 1 or 2 with matching bounds".into()));
    }
    if search
        .lower
        .iter()
        .zip(&search.upper)
        .any(|(l, u)| !(l.is_finite() && u.is_finite()) || l > u || *u <= 0.0)
    {
        return Err(AtrousError::EmptyFeasibleSet("search box is empty".into()));
    }
    let lower: Vec<f64> = search.lower.iter().map(|v| v.max(f64::MIN_POSITIVE)).collect();
    let upper = search.upper.clone();
    let grid = search.grid;
    let tol = search.tol.max(1e-14);
    let obj = |p: &[f64]| symmetric_ratio(n, p, grid);

    let best = if degree == 1 {
        let (x, fx) = golden(&mut |a| obj(&[a]), lower[0], upper[0], tol);
        vec![(vec![x], fx), (vec![lower[0]], obj(&[lower[0]])), (vec![upper[0]], obj(&[upper[0]]))]
            .into_iter()
            .fold((vec![], f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc })
    } else {
        let mut x = vec![0.5 * (lower[0] + upper[0]), 0.5 * (lower[1] + upper[1])];
        let mut fx = obj(&x);
        for _ in 0..200 {
            let before = x.clone();
            for &(dx, dy) in &DIRECTIONS {
                let norm = (dx * dx + dy * dy).sqrt();
                let d = [dx / norm, dy / norm];
                let (tmin, tmax) = line_range(&x, &d, &lower, &upper);
                if tmax - tmin <= tol {
                    continue;
                }
                let base = x.clone();
                let (t, ft) = golden(
                    &mut |t| obj(&[base[0] + t * d[0], base[1] + t * d[1]]),
                    tmin,
                    tmax,
                    tol,
                );
                if ft < fx {
                    x = vec![
                        (base[0] + t * d[0]).clamp(lower[0], upper[0]),
                        (base[1] + t * d[1]).clamp(lower[1], upper[1]),
                    ];
                    fx = obj(&x);
                }
            }
            if (x[0] - before[0]).abs() + (x[1] - before[1]).abs() <= tol {
                break;
            }
        }
        (x, fx)
    };
    let (params, ratio) = best;
    if !ratio.is_finite() {
        return Err(AtrousError::EmptyFeasibleSet(
            "no admissible parameters in the search box".into(),
        ));
    }
    let bank = symmetric_family(n, &params)?;
    Ok(SymmetricOptimum { params, bank, ratio })
}

fn line_range(x: &[f64], d: &[f64; 2], lo: &[f64], hi: &[f64]) -> (f64, f64) {
    let mut tmin = f64::NEG_INFINITY;
    let mut tmax = f64::INFINITY;
    for i in 0..2 {
        if d[i].abs() < 1e-15 {
            continue;
        }
        let t1 = (lo[i] - x[i]) / d[i];
        let t2 = (hi[i] - x[i]) / d[i];
        tmin = tmin.max(t1.min(t2));
        tmax = tmax.min(t1.max(t2));
    }
    (tmin, tmax)
}
