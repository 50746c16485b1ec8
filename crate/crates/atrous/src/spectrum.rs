//! Fourier transforms of finite sequences, exact quadrature of trigonometric
//! polynomials and certified extrema of nonnegative frame functions over 𝕋.
//!
//! Extrema are certified from samples on a uniform grid. When the grid has more
//! than twice the degree of the polynomial, the samples determine its
//! coefficients exactly, which gives the derivative bounds used to pad the
//! sampled extrema.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{AtrousError, Result};
use crate::sequences::{pairwise_sum, FiniteSequence};

/// Largest grid the library will build (2²⁴ samples).
pub const MAX_GRID: usize = 1 << 24;

/// Default number of grid samples.
pub const DEFAULT_GRID: usize = 4096;

/// A uniform grid `ξ = k/N`, `k = 0..N`, with `N` a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(AtrousError::GridNotPowerOfTwo(n));
        }
        Ok(GridSpec { n })
    }

    /// Smallest power-of-two grid with more than `bound` samples.
    pub fn exceeding(bound: usize) -> Self {
        GridSpec {
            n: (bound + 1).next_power_of_two(),
        }
    }

    /// This grid doubled until it has more than `bound` samples.
    pub fn doubled_past(self, bound: usize) -> Result<Self> {
        let mut n = self.n;
        while n <= bound {
            n *= 2;
        }
        if n > MAX_GRID {
            return Err(AtrousError::GridTooSmall {
                needed: bound + 1,
                have: MAX_GRID,
            });
        }
        Ok(GridSpec { n })
    }

    pub fn require_exceeds(self, bound: usize) -> Result<()> {
        if self.n <= bound {
            Err(AtrousError::GridTooSmall {
                needed: bound + 1,
                have: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        k as f64 / self.n as f64
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n: DEFAULT_GRID }
    }
}

/// An enclosure `[lo, hi]` of a single certified quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedInterval {
    pub lo: f64,
    pub hi: f64,
    pub lipschitz_pad: f64,
    pub grid: GridSpec,
}

impl CertifiedInterval {
    /// Enclosure of an infimum whose sampled minimum is `sampled`.
    pub fn for_inf(sampled: f64, pad: f64, grid: GridSpec) -> Self {
        CertifiedInterval {
            lo: sampled - pad,
            hi: sampled,
            lipschitz_pad: pad,
            grid,
        }
    }

    /// Enclosure of a supremum whose sampled maximum is `sampled`.
    pub fn for_sup(sampled: f64, pad: f64, grid: GridSpec) -> Self {
        CertifiedInterval {
            lo: sampled,
            hi: sampled + pad,
            lipschitz_pad: pad,
            grid,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Certified infimum and supremum of a function over its domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRange {
    pub inf: CertifiedInterval,
    pub sup: CertifiedInterval,
}

impl CertifiedRange {
    /// Samples of the function lie in `[sampled_min, sampled_max]`.
    pub fn sampled_min(&self) -> f64 {
        self.inf.hi
    }

    pub fn sampled_max(&self) -> f64 {
        self.sup.lo
    }

    /// A single interval containing every value of the function.
    pub fn enclosure(&self) -> CertifiedInterval {
        CertifiedInterval {
            lo: self.inf.lo,
            hi: self.sup.hi,
            lipschitz_pad: self.inf.lipschitz_pad.max(self.sup.lipschitz_pad),
            grid: self.inf.grid,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.enclosure().contains(v)
    }
}

/// Derivative bounds of a real trigonometric polynomial `Σ c_d e^{2πidξ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigBounds {
    /// `2π Σ |d||c_d|` bounds the first derivative.
    pub lipschitz: f64,
    /// `(2π)² Σ d²|c_d|` bounds the second derivative.
    pub curvature: f64,
}

impl TrigBounds {
    /// Recovers the coefficients of a degree-`degree` polynomial from its samples on
    /// a grid with more than `2·degree` points.
    pub fn from_samples(samples: &[f64], degree: usize) -> Self {
        let n = samples.len();
        assert!(n > 2 * degree, "grid too small for coefficient recovery");
        let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft_forward(&mut buf);
        let scale = 1.0 / n as f64;
        let mut l1 = Vec::with_capacity(2 * degree);
        let mut l2 = Vec::with_capacity(2 * degree);
        for d in 1..=degree {
            let c = (buf[d].norm() + buf[n - d].norm()) * scale;
            l1.push(d as f64 * c);
            l2.push((d * d) as f64 * c);
        }
        TrigBounds {
            lipschitz: 2.0 * PI * pairwise_sum(&l1),
            curvature: 4.0 * PI * PI * pairwise_sum(&l2),
        }
    }

    /// Exact coefficient bounds for a sum of squared moduli `Σᵢ|x̂ᵢ|²`.
    pub fn for_terms(terms: &[&FiniteSequence]) -> Self {
        let mut l1 = Vec::new();
        let mut l2 = Vec::new();
        for t in terms {
            let r = autocorrelation(t);
            let m = (r.len() - 1) / 2;
            for (i, &c) in r.iter().enumerate() {
                let d = (i as f64 - m as f64).abs();
                l1.push(d * c.abs());
                l2.push(d * d * c.abs());
            }
        }
        TrigBounds {
            lipschitz: 2.0 * PI * pairwise_sum(&l1),
            curvature: 4.0 * PI * PI * pairwise_sum(&l2),
        }
    }

    pub fn first_order_pad(&self, grid: GridSpec) -> f64 {
        self.lipschitz * grid.spacing() / 2.0
    }

    /// Pad valid at interior extrema: a critical point lies within half a cell of a sample.
    pub fn pad(&self, grid: GridSpec) -> f64 {
        let h = grid.spacing();
        (self.lipschitz * h / 2.0).min(self.curvature * h * h / 8.0)
    }
}

/// Autocorrelation `r(d) = Σₖ x(k)x(k+d)` for `d = −(len−1)..=len−1`.
pub fn autocorrelation(x: &FiniteSequence) -> Vec<f64> {
    let t = x.taps();
    let n = t.len();
    let mut r = vec![0.0; 2 * n - 1];
    let mut prods = Vec::with_capacity(n);
    for d in 0..n {
        prods.clear();
        for k in 0..n - d {
            prods.push(t[k] * t[k + d]);
        }
        let v = pairwise_sum(&prods);
        r[n - 1 + d] = v;
        r[n - 1 - d] = v;
    }
    r
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

/// In-place `X[k] = Σ x[n]e^{−2πikn/N}`.
pub fn fft_forward(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// In-place unnormalized `x[n] = Σ X[k]e^{2πikn/N}`.
pub fn fft_inverse(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// `x̂(ξ) = Σₙ x(n)e^{−2πinξ}`.
pub fn eval_ft(x: &FiniteSequence, xi: f64) -> Complex64 {
    let mut re = Vec::with_capacity(x.len());
    let mut im = Vec::with_capacity(x.len());
    for (n, v) in x.iter() {
        let t = (n as f64 * xi).rem_euclid(1.0);
        let (s, c) = (2.0 * PI * t).sin_cos();
        re.push(v * c);
        im.push(-v * s);
    }
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
}

/// Transform of the taps placed at `0..len`, ignoring the offset.
fn unshifted_ft_grid(x: &FiniteSequence, grid: GridSpec) -> Result<Vec<Complex64>> {
    let n = grid.n;
    if n < x.len() {
        return Err(AtrousError::GridTooSmall {
            needed: x.len(),
            have: n,
        });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, &v) in x.taps().iter().enumerate() {
        buf[i].re = v;
    }
    fft_forward(&mut buf);
    Ok(buf)
}

/// `x̂(k/N)` for `k = 0..N`.
pub fn eval_ft_grid(x: &FiniteSequence, grid: GridSpec) -> Result<Vec<Complex64>> {
    let n = grid.n;
    let mut buf = unshifted_ft_grid(x, grid)?;
    let off = x.offset().rem_euclid(n as i64) as usize;
    if off != 0 {
        for (k, b) in buf.iter_mut().enumerate() {
            let r = (off * k) % n;
            if r != 0 {
                let ang = -2.0 * PI * r as f64 / n as f64;
                *b *= Complex64::from_polar(1.0, ang);
            }
        }
    }
    Ok(buf)
}

/// `|x̂(k/N)|²` for `k = 0..N`.
pub fn power_grid(x: &FiniteSequence, grid: GridSpec) -> Result<Vec<f64>> {
    Ok(unshifted_ft_grid(x, grid)?.iter().map(|c| c.norm_sqr()).collect())
}

/// Samples of `Φ = Σᵢ|x̂ᵢ|²` on the grid.
pub fn frame_function_samples(terms: &[FiniteSequence], grid: GridSpec) -> Result<Vec<f64>> {
    let powers = terms
        .iter()
        .map(|t| power_grid(t, grid))
        .collect::<Result<Vec<_>>>()?;
    let mut col = Vec::with_capacity(terms.len());
    Ok((0..grid.n)
        .map(|k| {
            col.clear();
            col.extend(powers.iter().map(|p| p[k]));
            pairwise_sum(&col)
        })
        .collect())
}

/// Certified infimum and supremum over 𝕋 of samples of a trigonometric polynomial of known degree.
pub fn certify_samples(samples: &[f64], degree: usize, grid: GridSpec) -> Result<CertifiedRange> {
    grid.require_exceeds(2 * degree)?;
    let bounds = TrigBounds::from_samples(samples, degree);
    let pad = bounds.pad(grid);
    let (mn, mx) = min_max(samples);
    Ok(CertifiedRange {
        inf: CertifiedInterval::for_inf(mn, pad, grid),
        sup: CertifiedInterval::for_sup(mx, pad, grid),
    })
}

pub(crate) fn min_max(samples: &[f64]) -> (f64, f64) {
    samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)))
}

/// Certified range of `Φ(ξ) = Σᵢ|x̂ᵢ(ξ)|²` over 𝕋.
///
/// Requires `N > 2·max support length`.
pub fn certified_range(terms: &[FiniteSequence], grid: GridSpec) -> Result<CertifiedRange> {
    let max_len = terms.iter().map(|t| t.len()).max().unwrap_or(1);
    grid.require_exceeds(2 * max_len)?;
    let samples = frame_function_samples(terms, grid)?;
    certify_samples(&samples, max_len - 1, grid)
}

/// `∫_𝕋 Σᵢ|x̂ᵢ(ξ)|²·|x̂(ξ)|² dξ`, integrated exactly on a grid finer than the total degree.
pub fn quadrature_energy(terms: &[FiniteSequence], x: &FiniteSequence) -> f64 {
    if terms.iter().all(|t| t.len() == 1) {
        let sq: Vec<f64> = terms.iter().map(|t| t.taps()[0] * t.taps()[0]).collect();
        return pairwise_sum(&sq) * x.norm_sq();
    }
    let phi_degree = terms.iter().map(|t| t.len()).max().unwrap_or(1) - 1;
    let grid = GridSpec::exceeding(phi_degree + x.len() - 1);
    let phi = frame_function_samples(terms, grid).expect("grid sized to fit");
    let xs = power_grid(x, grid).expect("grid sized to fit");
    let prods: Vec<f64> = phi.iter().zip(&xs).map(|(a, b)| a * b).collect();
    pairwise_sum(&prods) / grid.n as f64
}

/// Checks `|Π_{k<J}(1+e^{2πi2ᵏξ})/2| ≤ min{1, 1/(2^{J+1}|ξ|)}` at every grid point of `[−1/2, 1/2]`.
pub fn haar_factor_bound_check(j: u32, grid: GridSpec) -> bool {
    assert!(j <= 20, "J must be at most 20");
    let n = grid.n as i64;
    let scale = 2f64.powi(j as i32 + 1);
    (-n / 2..=n / 2).all(|k| {
        let xi = k as f64 / n as f64;
        let prod = haar_factor_modulus(j, xi);
        let bound = if xi == 0.0 {
            1.0
        } else {
            (1.0 / (scale * xi.abs())).min(1.0)
        };
        prod <= bound * (1.0 + 1e-12)
    })
}

/// `|Π_{k<J}(1+e^{2πi2ᵏξ})/2| = Π|cos(π2ᵏξ)|`.
pub fn haar_factor_modulus(j: u32, xi: f64) -> f64 {
    let mut t = xi.rem_euclid(1.0);
    let mut prod = 1.0;
    for _ in 0..j {
        prod *= (PI * t).cos().abs();
        t = (2.0 * t).rem_euclid(1.0);
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn haar() -> (FiniteSequence, FiniteSequence) {
        (
            FiniteSequence::new(0, vec![0.5, 0.5]),
            FiniteSequence::new(0, vec![0.5, -0.5]),
        )
    }

    #[test]
    fn grid_rejects_non_powers_of_two() {
        assert!(GridSpec::new(1000).is_err());
        assert!(GridSpec::new(0).is_err());
        assert_eq!(GridSpec::new(1024).unwrap().n, 1024);
        assert_eq!(GridSpec::exceeding(1024).n, 2048);
        assert_eq!(GridSpec::exceeding(1000).n, 1024);
    }

    #[test]
    fn delta_transform_is_one() {
        for xi in [0.0, 0.1, 0.37, -0.4] {
            let v = eval_ft(&FiniteSequence::delta(), xi);
            assert_eq!(v, Complex64::new(1.0, 0.0));
        }
        let g = eval_ft_grid(&FiniteSequence::delta(), GridSpec::new(8).unwrap()).unwrap();
        assert!(g.iter().all(|c| *c == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn haar_on_four_points() {
        let (h, _) = haar();
        let v = eval_ft_grid(&h, GridSpec::new(4).unwrap()).unwrap();
        let expect = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, -0.5),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.5),
        ];
        for (a, b) in v.iter().zip(expect) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn grid_too_small_is_reported() {
        let x = FiniteSequence::new(0, vec![1.0; 9]);
        assert!(matches!(
            eval_ft_grid(&x, GridSpec::new(8).unwrap()),
            Err(AtrousError::GridTooSmall { .. })
        ));
        assert!(certified_range(&[x], GridSpec::new(16).unwrap()).is_err());
    }

    #[test]
    fn negative_offsets_rotate_phase() {
        let x = FiniteSequence::new(-3, vec![0.2, -1.0, 0.7, 0.1]);
        let grid = GridSpec::new(16).unwrap();
        let g = eval_ft_grid(&x, grid).unwrap();
        for (k, v) in g.iter().enumerate() {
            let d = eval_ft(&x, grid.point(k));
            assert!((v - d).norm() < 1e-14);
        }
    }

    #[test]
    fn haar_frame_function_is_flat() {
        let (h, g) = haar();
        let r = certified_range(&[h, g], GridSpec::new(64).unwrap()).unwrap();
        assert_abs_diff_eq!(r.sampled_min(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.sampled_max(), 1.0, epsilon = 1e-15);
        assert!(r.inf.lipschitz_pad < 1e-12);
    }

    #[test]
    fn scaled_delta_range() {
        let r = certified_range(&[FiniteSequence::impulse(3, 1.5)], GridSpec::new(8).unwrap()).unwrap();
        assert_eq!(r.enclosure().lo, 2.25);
        assert_eq!(r.enclosure().hi, 2.25);
    }

    #[test]
    fn trig_bounds_match_autocorrelation_route() {
        let x = FiniteSequence::new(-2, vec![0.3, -0.1, 0.9, 0.25, -0.4]);
        let grid = GridSpec::new(64).unwrap();
        let samples = frame_function_samples(std::slice::from_ref(&x), grid).unwrap();
        let a = TrigBounds::from_samples(&samples, 4);
        let b = TrigBounds::for_terms(&[&x]);
        assert_abs_diff_eq!(a.lipschitz, b.lipschitz, epsilon = 1e-12);
        assert_abs_diff_eq!(a.curvature, b.curvature, epsilon = 1e-11);
    }

    #[test]
    fn quadrature_of_delta_is_plain_norm() {
        let x = FiniteSequence::new(-1, vec![0.3, 0.1, -2.0, 0.123456789]);
        assert_eq!(quadrature_energy(&[FiniteSequence::delta()], &x), x.norm_sq());
        let (h, g) = haar();
        assert_abs_diff_eq!(quadrature_energy(&[h, g], &x), x.norm_sq(), epsilon = 1e-14);
    }

    #[test]
    fn sine_product_small_cases() {
        assert!(haar_factor_bound_check(1, GridSpec::new(1024).unwrap()));
        assert!(haar_factor_bound_check(8, GridSpec::new(8192).unwrap()));
        assert_eq!(haar_factor_modulus(1, 0.0), 1.0);
    }

    #[test]
    fn autocorrelation_is_symmetric() {
        let x = FiniteSequence::new(0, vec![1.0, 2.0, 3.0]);
        assert_eq!(autocorrelation(&x), vec![3.0, 8.0, 14.0, 8.0, 3.0]);
    }
}
