//! Finitely supported real sequences on ℤ and the basic operators acting on them:
//! convolution, upsampling, involution, translation and half-band modulation.

use serde::{Deserialize, Serialize};

use crate::error::{AtrousError, Result};

/// Sum of `values` in a fixed balanced-tree order.
///
/// The order depends only on the length, so results are reproducible bit-for-bit.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Pairwise-summed dot product.
pub fn pairwise_dot(a: &[f64], b: &[f64]) -> f64 {
    let prods: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    pairwise_sum(&prods)
}

/// A real sequence with finite support, stored as a dense block of taps starting at `offset`.
///
/// Canonical form has nonzero first and last taps; the zero sequence is a single `0.0` at offset 0.
/// Only exact zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSequence {
    offset: i64,
    taps: Vec<f64>,
}

impl FiniteSequence {
    /// Builds a canonical sequence; exact zeros are trimmed from both ends.
    pub fn new(offset: i64, taps: Vec<f64>) -> Self {
        let first = taps.iter().position(|&v| v != 0.0);
        match first {
            None => Self::zero(),
            Some(first) => {
                let last = taps.iter().rposition(|&v| v != 0.0).unwrap();
                let taps = if first == 0 && last + 1 == taps.len() {
                    taps
                } else {
                    taps[first..=last].to_vec()
                };
                FiniteSequence {
                    offset: offset + first as i64,
                    taps,
                }
            }
        }
    }

    /// Like [`FiniteSequence::new`] but rejects NaN and infinite taps.
    pub fn try_new(offset: i64, taps: Vec<f64>) -> Result<Self> {
        if taps.iter().any(|v| !v.is_finite()) {
            return Err(AtrousError::NonFinite);
        }
        Ok(Self::new(offset, taps))
    }

    pub fn zero() -> Self {
        FiniteSequence {
            offset: 0,
            taps: vec![0.0],
        }
    }

    /// The unit impulse δ.
    pub fn delta() -> Self {
        FiniteSequence {
            offset: 0,
            taps: vec![1.0],
        }
    }

    /// `value` at index `k`, zero elsewhere.
    pub fn impulse(k: i64, value: f64) -> Self {
        Self::new(k, vec![value])
    }

    /// Builds a sequence from `(index, value)` pairs; missing indices are zero.
    pub fn from_pairs(pairs: &[(i64, f64)]) -> Self {
        if pairs.is_empty() {
            return Self::zero();
        }
        let lo = pairs.iter().map(|p| p.0).min().unwrap();
        let hi = pairs.iter().map(|p| p.0).max().unwrap();
        let mut taps = vec![0.0; (hi - lo + 1) as usize];
        for &(k, v) in pairs {
            taps[(k - lo) as usize] = v;
        }
        Self::new(lo, taps)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// Index of the last stored tap.
    pub fn last_index(&self) -> i64 {
        self.offset + self.taps.len() as i64 - 1
    }

    /// Support length (number of stored taps).
    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.taps.len() == 1 && self.taps[0] == 0.0
    }

    pub fn get(&self, k: i64) -> f64 {
        let i = k - self.offset;
        if i < 0 || i as usize >= self.taps.len() {
            0.0
        } else {
            self.taps[i as usize]
        }
    }

    /// `(index, value)` pairs of every stored tap.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.taps
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.offset + i as i64, v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.taps.iter().filter(|v| **v != 0.0).count()
    }

    pub fn norm_sq(&self) -> f64 {
        let sq: Vec<f64> = self.taps.iter().map(|v| v * v).collect();
        pairwise_sum(&sq)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn l1_norm(&self) -> f64 {
        let abs: Vec<f64> = self.taps.iter().map(|v| v.abs()).collect();
        pairwise_sum(&abs)
    }

    pub fn sum(&self) -> f64 {
        pairwise_sum(&self.taps)
    }

    pub fn max_abs(&self) -> f64 {
        self.taps.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// ℓ² inner product.
    pub fn dot(&self, other: &FiniteSequence) -> f64 {
        let lo = self.offset.max(other.offset);
        let hi = self.last_index().min(other.last_index());
        if lo > hi {
            return 0.0;
        }
        let a = &self.taps[(lo - self.offset) as usize..=(hi - self.offset) as usize];
        let b = &other.taps[(lo - other.offset) as usize..=(hi - other.offset) as usize];
        pairwise_dot(a, b)
    }

    pub fn scale(&self, c: f64) -> FiniteSequence {
        Self::new(self.offset, self.taps.iter().map(|v| v * c).collect())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &FiniteSequence, c: f64) -> FiniteSequence {
        let lo = self.offset.min(other.offset);
        let hi = self.last_index().max(other.last_index());
        let taps = (lo..=hi).map(|k| self.get(k) + c * other.get(k)).collect();
        Self::new(lo, taps)
    }

    pub fn add(&self, other: &FiniteSequence) -> FiniteSequence {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &FiniteSequence) -> FiniteSequence {
        self.add_scaled(other, -1.0)
    }

    /// Convolution `(x*y)(k) = Σₙ y(n)·x(k−n)`, each output tap pairwise-summed.
    ///
    /// The operand with fewer nonzero taps drives the inner loop, which keeps
    /// convolutions with upsampled (mostly zero) filters cheap.
    pub fn convolve(&self, other: &FiniteSequence) -> FiniteSequence {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (dense, sparse) = if other.nonzero_count() <= self.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let kernel: Vec<(i64, f64)> = sparse.iter().filter(|(_, v)| *v != 0.0).collect();
        let out_lo = self.offset + other.offset;
        let out_len = self.len() + other.len() - 1;
        let mut out = Vec::with_capacity(out_len);
        let mut terms = Vec::with_capacity(kernel.len());
        let dlen = dense.len() as i64;
        for i in 0..out_len as i64 {
            let k = out_lo + i;
            terms.clear();
            for &(n, v) in &kernel {
                let idx = k - n - dense.offset;
                if idx >= 0 && idx < dlen {
                    terms.push(v * dense.taps[idx as usize]);
                }
            }
            out.push(pairwise_sum(&terms));
        }
        Self::new(out_lo, out)
    }

    /// `Uᵐx`: moves tap `k` to `2ᵐ·k`, zeros in between.
    pub fn upsample(&self, m: u32) -> FiniteSequence {
        if m == 0 || self.is_zero() {
            return self.clone();
        }
        let step = 1usize << m;
        let mut taps = vec![0.0; (self.len() - 1) * step + 1];
        for (i, &v) in self.taps.iter().enumerate() {
            taps[i * step] = v;
        }
        Self::new(self.offset * step as i64, taps)
    }

    /// `x̄(k) = x(−k)`.
    pub fn involute(&self) -> FiniteSequence {
        let mut taps = self.taps.clone();
        taps.reverse();
        Self::new(-self.last_index(), taps)
    }

    /// `(Tₖx)(n) = x(n − k)`.
    pub fn translate(&self, k: i64) -> FiniteSequence {
        if self.is_zero() {
            return self.clone();
        }
        FiniteSequence {
            offset: self.offset + k,
            taps: self.taps.clone(),
        }
    }

    /// `(−1)ᵏ·x(k)`, shifting the spectrum by one half.
    pub fn modulate_half(&self) -> FiniteSequence {
        let taps = self
            .iter()
            .map(|(k, v)| if k.rem_euclid(2) == 0 { v } else { -v })
            .collect();
        Self::new(self.offset, taps)
    }

    /// Copy with taps of magnitude ≤ `tol` set to zero (display helper).
    pub fn prune(&self, tol: f64) -> FiniteSequence {
        let taps = self
            .taps
            .iter()
            .map(|&v| if v.abs() <= tol { 0.0 } else { v })
            .collect();
        Self::new(self.offset, taps)
    }

    /// Whether the taps read the same reversed.
    pub fn is_palindromic(&self, tol: f64) -> bool {
        let n = self.taps.len();
        (0..n / 2).all(|i| (self.taps[i] - self.taps[n - 1 - i]).abs() <= tol)
    }

    /// Max tap difference after aligning supports; `f64::INFINITY` when the lengths differ.
    pub fn distance_up_to_translation(&self, other: &FiniteSequence) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.taps
            .iter()
            .zip(&other.taps)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Smallest aligned tap distance over translation, reflection and sign flips.
    pub fn distance_up_to_symmetry(&self, other: &FiniteSequence) -> f64 {
        let candidates = [
            other.clone(),
            other.scale(-1.0),
            other.involute(),
            other.involute().scale(-1.0),
        ];
        candidates
            .iter()
            .map(|c| self.distance_up_to_translation(c))
            .fold(f64::INFINITY, f64::min)
    }
}

impl Default for FiniteSequence {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(offset: i64, taps: &[f64]) -> FiniteSequence {
        FiniteSequence::new(offset, taps.to_vec())
    }

    #[test]
    fn canonical_trimming() {
        let x = seq(-2, &[0.0, 0.0, 1.0, 2.0, 0.0]);
        assert_eq!(x.offset(), 0);
        assert_eq!(x.taps(), &[1.0, 2.0]);
        assert!(seq(5, &[0.0, 0.0]).is_zero());
        assert_eq!(seq(5, &[0.0]).offset(), 0);
        let tiny = seq(0, &[1e-300, 1.0]);
        assert_eq!(tiny.len(), 2);
    }

    #[test]
    fn delta_is_identity() {
        let x = seq(-1, &[0.5, -0.25, 3.0]);
        assert_eq!(FiniteSequence::delta().convolve(&x), x);
        assert_eq!(x.convolve(&FiniteSequence::delta()), x);
    }

    #[test]
    fn haar_square() {
        let h = seq(0, &[0.5, 0.5]);
        assert_eq!(h.convolve(&h), seq(0, &[0.25, 0.5, 0.25]));
    }

    #[test]
    fn upsample_definition() {
        assert_eq!(seq(0, &[1.0, 2.0, 3.0]).upsample(1), seq(0, &[1.0, 0.0, 2.0, 0.0, 3.0]));
        assert_eq!(FiniteSequence::delta().upsample(3), FiniteSequence::delta());
        let x = seq(-1, &[1.0, 2.0]);
        let u = x.upsample(2);
        assert_eq!(u.offset(), -4);
        assert_eq!(u.get(0), 2.0);
    }

    #[test]
    fn involution_and_translation() {
        assert_eq!(seq(0, &[1.0, 2.0]).involute(), seq(-1, &[2.0, 1.0]));
        let sym = seq(-1, &[1.0, 3.0, 1.0]);
        assert_eq!(sym.involute(), sym);
        assert_eq!(seq(0, &[1.0, 1.0]).translate(2), seq(2, &[1.0, 1.0]));
        assert_eq!(sym.translate(0), sym);
    }

    #[test]
    fn modulation_is_an_involution() {
        let x = seq(-3, &[0.1, 0.2, 0.3, 0.4]);
        assert_eq!(x.modulate_half().modulate_half(), x);
        assert_eq!(FiniteSequence::delta().modulate_half(), FiniteSequence::delta());
        assert_eq!(x.modulate_half().get(-3), -0.1);
    }

    #[test]
    fn pairwise_sum_is_order_fixed() {
        let v: Vec<f64> = (0..1000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        assert_eq!(pairwise_sum(&v), pairwise_sum(&v.clone()));
        assert!((pairwise_sum(&v) - v.iter().sum::<f64>()).abs() < 1e-12);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn dot_and_norms() {
        let x = seq(0, &[1.0, 2.0]);
        let y = seq(1, &[3.0, 4.0]);
        assert_eq!(x.dot(&y), 6.0);
        assert_eq!(x.norm_sq(), 5.0);
        assert_eq!(x.sub(&x), FiniteSequence::zero());
        assert_eq!(x.add(&y), seq(0, &[1.0, 5.0, 4.0]));
    }

    #[test]
    fn from_pairs_fills_gaps() {
        let x = FiniteSequence::from_pairs(&[(3, 1.0), (0, 2.0)]);
        assert_eq!(x, seq(0, &[2.0, 0.0, 0.0, 1.0]));
    }
}
