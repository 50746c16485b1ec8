//! Two-dimensional sequences, separable products of 1-D banks and their frame bounds.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AtrousError, Result};
use crate::filterbank::{frame_function_samples, FilterBank, FrameOrder, FrameReport, TailFlag};
use crate::sequences::{pairwise_sum, FiniteSequence};
use crate::spectrum::{fft_forward, min_max, CertifiedInterval, GridSpec};

/// Maximum order for 2-D analysis.
pub const MAX_DEPTH_2D: usize = 10;

/// A finitely supported array on ℤ², stored densely in row-major order.
///
/// The first index runs down rows. Canonical form has no all-zero border row or column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSequence2D {
    offset: (i64, i64),
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FiniteSequence2D {
    pub fn new(offset: (i64, i64), rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(rows * cols, data.len(), "data length must be rows × cols");
        let nz_row = |r: usize| data[r * cols..(r + 1) * cols].iter().any(|v| *v != 0.0);
        let nz_col = |c: usize| (0..rows).any(|r| data[r * cols + c] != 0.0);
        let Some(r0) = (0..rows).find(|&r| nz_row(r)) else {
            return Self::zero();
        };
        let r1 = (0..rows).rev().find(|&r| nz_row(r)).unwrap();
        let c0 = (0..cols).find(|&c| nz_col(c)).unwrap();
        let c1 = (0..cols).rev().find(|&c| nz_col(c)).unwrap();
        let (nr, nc) = (r1 - r0 + 1, c1 - c0 + 1);
        let mut out = Vec::with_capacity(nr * nc);
        for r in r0..=r1 {
            out.extend_from_slice(&data[r * cols + c0..r * cols + c1 + 1]);
        }
        FiniteSequence2D {
            offset: (offset.0 + r0 as i64, offset.1 + c0 as i64),
            rows: nr,
            cols: nc,
            data: out,
        }
    }

    pub fn zero() -> Self {
        FiniteSequence2D {
            offset: (0, 0),
            rows: 1,
            cols: 1,
            data: vec![0.0],
        }
    }

    pub fn delta() -> Self {
        FiniteSequence2D {
            offset: (0, 0),
            rows: 1,
            cols: 1,
            data: vec![1.0],
        }
    }

    /// `x(k₁)·y(k₂)`.
    pub fn outer(x: &FiniteSequence, y: &FiniteSequence) -> Self {
        let mut data = Vec::with_capacity(x.len() * y.len());
        for a in x.taps() {
            for b in y.taps() {
                data.push(a * b);
            }
        }
        Self::new((x.offset(), y.offset()), x.len(), y.len(), data)
    }

    pub fn offset(&self) -> (i64, i64) {
        self.offset
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.len() == 1 && self.data[0] == 0.0
    }

    pub fn get(&self, k1: i64, k2: i64) -> f64 {
        let r = k1 - self.offset.0;
        let c = k2 - self.offset.1;
        if r < 0 || c < 0 || r as usize >= self.rows || c as usize >= self.cols {
            0.0
        } else {
            self.data[r as usize * self.cols + c as usize]
        }
    }

    pub fn sum(&self) -> f64 {
        pairwise_sum(&self.data)
    }

    pub fn norm_sq(&self) -> f64 {
        let sq: Vec<f64> = self.data.iter().map(|v| v * v).collect();
        pairwise_sum(&sq)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn dot(&self, other: &FiniteSequence2D) -> f64 {
        let mut prods = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let k1 = self.offset.0 + r as i64;
                let k2 = self.offset.1 + c as i64;
                prods.push(self.data[r * self.cols + c] * other.get(k1, k2));
            }
        }
        pairwise_sum(&prods)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(
            self.offset,
            self.rows,
            self.cols,
            self.data.iter().map(|v| v * s).collect(),
        )
    }

    pub fn add_scaled(&self, other: &FiniteSequence2D, s: f64) -> Self {
        let r0 = self.offset.0.min(other.offset.0);
        let c0 = self.offset.1.min(other.offset.1);
        let r1 = (self.offset.0 + self.rows as i64).max(other.offset.0 + other.rows as i64);
        let c1 = (self.offset.1 + self.cols as i64).max(other.offset.1 + other.cols as i64);
        let (nr, nc) = ((r1 - r0) as usize, (c1 - c0) as usize);
        let mut data = Vec::with_capacity(nr * nc);
        for k1 in r0..r1 {
            for k2 in c0..c1 {
                data.push(self.get(k1, k2) + s * other.get(k1, k2));
            }
        }
        Self::new((r0, c0), nr, nc, data)
    }

    pub fn sub(&self, other: &FiniteSequence2D) -> Self {
        self.add_scaled(other, -1.0)
    }

    fn nonzeros(&self) -> Vec<(i64, i64, f64)> {
        let mut v = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.data[r * self.cols + c];
                if x != 0.0 {
                    v.push((self.offset.0 + r as i64, self.offset.1 + c as i64, x));
                }
            }
        }
        v
    }

    /// 2-D convolution, each output pairwise-summed.
    pub fn convolve(&self, other: &FiniteSequence2D) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let a = self.nonzeros();
        let b = other.nonzeros();
        let (dense, kernel) = if b.len() <= a.len() { (self, b) } else { (other, a) };
        let o = (self.offset.0 + other.offset.0, self.offset.1 + other.offset.1);
        let nr = self.rows + other.rows - 1;
        let nc = self.cols + other.cols - 1;
        let mut data = Vec::with_capacity(nr * nc);
        let mut terms = Vec::with_capacity(kernel.len());
        for r in 0..nr as i64 {
            for c in 0..nc as i64 {
                terms.clear();
                for &(n1, n2, v) in &kernel {
                    let x = dense.get(o.0 + r - n1, o.1 + c - n2);
                    if x != 0.0 {
                        terms.push(v * x);
                    }
                }
                data.push(pairwise_sum(&terms));
            }
        }
        Self::new(o, nr, nc, data)
    }

    /// Upsampling by `2ᵐ` along both axes.
    pub fn upsample(&self, m: u32) -> Self {
        if m == 0 || self.is_zero() {
            return self.clone();
        }
        let s = 1usize << m;
        let nr = (self.rows - 1) * s + 1;
        let nc = (self.cols - 1) * s + 1;
        let mut data = vec![0.0; nr * nc];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[r * s * nc + c * s] = self.data[r * self.cols + c];
            }
        }
        Self::new((self.offset.0 * s as i64, self.offset.1 * s as i64), nr, nc, data)
    }

    /// `x(−k₁, −k₂)`.
    pub fn involute(&self) -> Self {
        let mut data = self.data.clone();
        data.reverse();
        Self::new(
            (
                -(self.offset.0 + self.rows as i64 - 1),
                -(self.offset.1 + self.cols as i64 - 1),
            ),
            self.rows,
            self.cols,
            data,
        )
    }

    pub fn translate(&self, k: (i64, i64)) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.offset = (self.offset.0 + k.0, self.offset.1 + k.1);
        out
    }

    /// Max entry difference after aligning supports; infinite when shapes differ.
    pub fn distance_up_to_translation(&self, other: &FiniteSequence2D) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `X̂(ξ₁, ξ₂) = Σ x(k₁,k₂)e^{−2πi(k₁ξ₁+k₂ξ₂)}`.
    pub fn eval_ft(&self, xi1: f64, xi2: f64) -> Complex64 {
        let mut re = Vec::with_capacity(self.data.len());
        let mut im = Vec::with_capacity(self.data.len());
        for (k1, k2, v) in self.nonzeros() {
            let t = (k1 as f64 * xi1 + k2 as f64 * xi2).rem_euclid(1.0);
            let (s, c) = (2.0 * PI * t).sin_cos();
            re.push(v * c);
            im.push(-v * s);
        }
        Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
    }

    /// `|X̂(k₁/N, k₂/N)|²`, row-major `N×N`.
    pub fn power_grid(&self, grid: GridSpec) -> Result<Vec<f64>> {
        let n = grid.n;
        if self.rows > n || self.cols > n {
            return Err(AtrousError::GridTooSmall {
                needed: self.rows.max(self.cols),
                have: n,
            });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..self.rows {
            for c in 0..self.cols {
                buf[r * n + c].re = self.data[r * self.cols + c];
            }
        }
        fft_2d(&mut buf, n);
        Ok(buf.iter().map(|v| v.norm_sqr()).collect())
    }
}

/// In-place forward 2-D transform of a row-major `N×N` buffer.
pub fn fft_2d(buf: &mut [Complex64], n: usize) {
    for row in buf.chunks_mut(n) {
        fft_forward(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..n {
        for r in 0..n {
            col[r] = buf[r * n + c];
        }
        fft_forward(&mut col);
        for r in 0..n {
            buf[r * n + c] = col[r];
        }
    }
}

/// Filters `H^{ℓ,m}` for `0 ≤ ℓ ≤ L`, `0 ≤ m ≤ M`; `H^{0,0}` is the low-pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterBank2D {
    filters: Vec<Vec<FiniteSequence2D>>,
}

impl FilterBank2D {
    /// Checks `Ĥ^{0,0}(0,0) = 1` and `Ĥ^{ℓ,m}(0,0) = 0` otherwise, to `1e−6`.
    pub fn new(filters: Vec<Vec<FiniteSequence2D>>) -> Result<Self> {
        if filters.is_empty() || filters[0].is_empty() || filters.iter().any(|r| r.len() != filters[0].len())
        {
            return Err(AtrousError::InvalidBank("filter grid must be rectangular".into()));
        }
        if filters.len() * filters[0].len() < 2 {
            return Err(AtrousError::InvalidBank("no high-pass filters".into()));
        }
        for (l, row) in filters.iter().enumerate() {
            for (m, f) in row.iter().enumerate() {
                let target = if l == 0 && m == 0 { 1.0 } else { 0.0 };
                if (f.sum() - target).abs() > 1e-6 {
                    return Err(AtrousError::InvalidBank(format!(
                        "Ĥ^({l},{m})(0,0) = {} should be {target}",
                        f.sum()
                    )));
                }
            }
        }
        Ok(FilterBank2D { filters })
    }

    pub fn filter(&self, l: usize, m: usize) -> &FiniteSequence2D {
        &self.filters[l][m]
    }

    pub fn lowpass(&self) -> &FiniteSequence2D {
        &self.filters[0][0]
    }

    /// Index pairs `(ℓ, m) ≠ (0, 0)` in row-major order.
    pub fn highpass_indices(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for l in 0..self.filters.len() {
            for m in 0..self.filters[0].len() {
                if (l, m) != (0, 0) {
                    v.push((l, m));
                }
            }
        }
        v
    }

    pub fn highpass(&self) -> Vec<&FiniteSequence2D> {
        self.highpass_indices()
            .into_iter()
            .map(|(l, m)| &self.filters[l][m])
            .collect()
    }

    fn max_dims(&self) -> (usize, usize) {
        let all = self.filters.iter().flatten();
        let r = all.clone().map(|f| f.rows).max().unwrap();
        let c = all.map(|f| f.cols).max().unwrap();
        (r, c)
    }

    /// Upper bound on the support extent per axis of the order-`J` iterated filters.
    pub fn max_support(&self, order: usize) -> usize {
        let (lr, lc) = self.lowpass().shape();
        let (hr, hc) = self.max_dims();
        let low = |len: usize, j: usize| ((1usize << j) - 1) * (len - 1) + 1;
        let mut best = low(lr, order).max(low(lc, order));
        for j in 1..=order {
            let s = 1usize << (j - 1);
            best = best.max(low(lr, j - 1) + s * (hr - 1));
            best = best.max(low(lc, j - 1) + s * (hc - 1));
        }
        best
    }
}

/// `H^{ℓ,m}(k₁,k₂) = xˡ(k₁)·yᵐ(k₂)`, index 0 being the low-pass.
pub fn separable_product(bank_x: &FilterBank, bank_y: &FilterBank) -> FilterBank2D {
    let xs: Vec<&FiniteSequence> = std::iter::once(bank_x.lowpass()).chain(bank_x.highpass()).collect();
    let ys: Vec<&FiniteSequence> = std::iter::once(bank_y.lowpass()).chain(bank_y.highpass()).collect();
    let filters = xs
        .iter()
        .map(|x| ys.iter().map(|y| FiniteSequence2D::outer(x, y)).collect())
        .collect();
    FilterBank2D::new(filters).expect("products of valid banks are valid")
}

/// `H⁰_J` and `Hˡ_j = H⁰_{j−1} * U^{j−1}Hˡ` for `j ≤ J`.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratedFilters2D {
    pub lowpass: FiniteSequence2D,
    /// `highpass[j−1][i]` follows [`FilterBank2D::highpass_indices`].
    pub highpass: Vec<Vec<FiniteSequence2D>>,
}

impl IteratedFilters2D {
    pub fn all(&self) -> Vec<FiniteSequence2D> {
        let mut v: Vec<FiniteSequence2D> = self.highpass.iter().flatten().cloned().collect();
        v.push(self.lowpass.clone());
        v
    }
}

pub fn iterated_filters_2d(bank: &FilterBank2D, order: usize) -> Result<IteratedFilters2D> {
    if order == 0 || order > MAX_DEPTH_2D {
        return Err(AtrousError::DepthLimit {
            requested: order,
            max: MAX_DEPTH_2D,
        });
    }
    let mut h = FiniteSequence2D::delta();
    let mut highpass = Vec::with_capacity(order);
    for j in 1..=order {
        let m = (j - 1) as u32;
        highpass.push(bank.highpass().iter().map(|f| h.convolve(&f.upsample(m))).collect());
        h = h.convolve(&bank.lowpass().upsample(m));
    }
    Ok(IteratedFilters2D { lowpass: h, highpass })
}

/// Samples of the 2-D frame function `Q` on an `N×N` grid, with per-level sampled sups.
pub fn frame_function_samples_2d(
    bank: &FilterBank2D,
    order: usize,
    grid: GridSpec,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = grid.n;
    let h2 = bank.lowpass().power_grid(grid)?;
    let g2 = bank
        .highpass()
        .iter()
        .map(|f| f.power_grid(grid))
        .collect::<Result<Vec<_>>>()?;
    let mut hj = vec![1.0; n * n];
    let mut q = vec![0.0; n * n];
    let mut sups = Vec::with_capacity(order);
    for j in 1..=order {
        let s = ((1u64 << (j - 1)) % n as u64) as usize;
        let mut level_max = 0.0f64;
        for m1 in 0..n {
            let i1 = (m1 * s) % n;
            for m2 in 0..n {
                let idx = i1 * n + (m2 * s) % n;
                let at = m1 * n + m2;
                let level = g2.iter().map(|g| g[idx]).sum::<f64>() * hj[at];
                q[at] += level;
                level_max = level_max.max(level);
                hj[at] *= h2[idx];
            }
        }
        sups.push(level_max);
    }
    for (a, b) in q.iter_mut().zip(&hj) {
        *a += b;
    }
    Ok((q, sups))
}

/// Pad for extrema of a real 2-D trigonometric polynomial from its samples.
fn pad_2d(samples: &[f64], n: usize, degree: usize) -> f64 {
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_2d(&mut buf, n);
    let scale = 1.0 / (n * n) as f64;
    let mut l1 = Vec::new();
    let mut l2 = Vec::new();
    let mut m = Vec::new();
    let signed = |i: usize| -> Option<i64> {
        if i <= degree {
            Some(i as i64)
        } else if i >= n - degree {
            Some(i as i64 - n as i64)
        } else {
            None
        }
    };
    for i1 in 0..n {
        let Some(d1) = signed(i1) else { continue };
        for i2 in 0..n {
            let Some(d2) = signed(i2) else { continue };
            let c = buf[i1 * n + i2].norm() * scale;
            let (a, b) = (d1.unsigned_abs() as f64, d2.unsigned_abs() as f64);
            l1.push(a * c);
            l2.push(b * c);
            m.push((a + b) * (a + b) * c);
        }
    }
    let h = 1.0 / n as f64;
    let lip = 2.0 * PI * (pairwise_sum(&l1) + pairwise_sum(&l2));
    let curv = 4.0 * PI * PI * pairwise_sum(&m);
    (lip * h / 2.0).min(curv * h * h / 8.0)
}

/// Certified bounds of the 2-D frame function of order `J`.
pub fn frame_bounds_2d(bank: &FilterBank2D, order: usize, grid: GridSpec) -> Result<FrameReport> {
    if order == 0 || order > MAX_DEPTH_2D {
        return Err(AtrousError::DepthLimit {
            requested: order,
            max: MAX_DEPTH_2D,
        });
    }
    let max_len = bank.max_support(order);
    let grid = grid.doubled_past(2 * max_len)?;
    if grid.n > 4096 {
        return Err(AtrousError::GridTooSmall {
            needed: 2 * max_len + 1,
            have: 4096,
        });
    }
    let (q, per_level_sup) = frame_function_samples_2d(bank, order, grid)?;
    let pad = pad_2d(&q, grid.n, max_len - 1);
    let (mn, mx) = min_max(&q);
    let a = CertifiedInterval::for_inf(mn, pad, grid);
    let b = CertifiedInterval::for_sup(mx, pad, grid);
    Ok(FrameReport {
        order: FrameOrder::Finite { order },
        parseval_deviation: (b.hi - 1.0).abs().max((1.0 - a.lo).abs()),
        a,
        b,
        per_level_sup,
        tail_flag: TailFlag::Clear,
    })
}

/// Sampled `(min_{j≤J} inf Φ_j, max_{j≤J} sup Φ_j)` of a 1-D bank on the given grid.
pub fn level_uniform_bounds(bank: &FilterBank, order: usize, grid: GridSpec) -> Result<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 1..=order {
        let fs = frame_function_samples(bank, j, grid)?;
        let (a, b) = min_max(&fs.phi);
        lo = lo.min(a);
        hi = hi.max(b);
    }
    Ok((lo, hi))
}

/// Output of the 2-D analysis operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pyramid2D {
    /// `details[j−1][i]` for the high-pass index list of the bank.
    pub details: Vec<Vec<FiniteSequence2D>>,
    pub approximation: FiniteSequence2D,
}

impl Pyramid2D {
    pub fn order(&self) -> usize {
        self.details.len()
    }

    pub fn energy(&self) -> f64 {
        let e: Vec<f64> = self
            .details
            .iter()
            .flatten()
            .chain(std::iter::once(&self.approximation))
            .map(|s| s.norm_sq())
            .collect();
        pairwise_sum(&e)
    }

    pub fn dot(&self, other: &Pyramid2D) -> f64 {
        let d: Vec<f64> = self
            .details
            .iter()
            .flatten()
            .zip(other.details.iter().flatten())
            .map(|(a, b)| a.dot(b))
            .chain(std::iter::once(self.approximation.dot(&other.approximation)))
            .collect();
        pairwise_sum(&d)
    }
}

pub fn analyze_2d(bank: &FilterBank2D, x: &FiniteSequence2D, order: usize) -> Result<Pyramid2D> {
    let f = iterated_filters_2d(bank, order)?;
    Ok(Pyramid2D {
        details: f
            .highpass
            .iter()
            .map(|lv| lv.iter().map(|g| x.convolve(&g.involute())).collect())
            .collect(),
        approximation: x.convolve(&f.lowpass.involute()),
    })
}

pub fn synthesize_2d(bank: &FilterBank2D, pyr: &Pyramid2D) -> Result<FiniteSequence2D> {
    let branches = bank.highpass_indices().len();
    if pyr.details.iter().any(|lv| lv.len() != branches) {
        return Err(AtrousError::PyramidShape(format!(
            "expected {branches} branches per level"
        )));
    }
    let f = iterated_filters_2d(bank, pyr.order())?;
    let mut acc = pyr.approximation.convolve(&f.lowpass);
    for (lv_c, lv_g) in pyr.details.iter().zip(&f.highpass) {
        for (c, g) in lv_c.iter().zip(lv_g) {
            acc = acc.add_scaled(&c.convolve(g), 1.0);
        }
    }
    Ok(acc)
}

/// `∫∫ Σᵢ|F̂ᵢ|²·|X̂|²`, integrated exactly on a grid finer than the total degree per axis.
pub fn quadrature_energy_2d(terms: &[FiniteSequence2D], x: &FiniteSequence2D) -> Result<f64> {
    let fdeg = terms
        .iter()
        .map(|t| t.rows.max(t.cols))
        .max()
        .unwrap_or(1)
        - 1;
    let xdeg = x.rows.max(x.cols) - 1;
    let grid = GridSpec::exceeding(fdeg + xdeg);
    let n = grid.n;
    let mut phi = vec![0.0; n * n];
    for t in terms {
        for (a, b) in phi.iter_mut().zip(t.power_grid(grid)?) {
            *a += b;
        }
    }
    let xs = x.power_grid(grid)?;
    let prods: Vec<f64> = phi.iter().zip(&xs).map(|(a, b)| a * b).collect();
    Ok(pairwise_sum(&prods) / (n * n) as f64)
}
