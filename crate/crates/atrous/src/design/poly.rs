use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::sequences::FiniteSequence;

/// `c₀ + Σ_{k≥1} c_k cos(2πkξ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosinePolynomial {
    coeffs: Vec<f64>,
}

impl CosinePolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        CosinePolynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (2.0 * PI * (k as f64 * xi).rem_euclid(1.0)).cos())
            .collect();
        crate::sequences::pairwise_sum(&terms)
    }

    /// The symmetric sequence with `x̂ = self`: `c₀` at 0 and `c_k/2` at `±k`.
    pub fn to_sequence(&self) -> FiniteSequence {
        let k = self.degree();
        let mut taps = vec![0.0; 2 * k + 1];
        taps[k] = self.coeffs[0];
        for i in 1..=k {
            taps[k + i] = self.coeffs[i] / 2.0;
            taps[k - i] = self.coeffs[i] / 2.0;
        }
        FiniteSequence::new(-(k as i64), taps)
    }

    /// Inverse of [`CosinePolynomial::to_sequence`], averaging `x(k)` and `x(−k)`.
    pub fn from_symmetric(x: &FiniteSequence) -> Self {
        let k = x.offset().unsigned_abs().max(x.last_index().unsigned_abs()) as i64;
        let mut c = vec![x.get(0)];
        for i in 1..=k {
            c.push(x.get(i) + x.get(-i));
        }
        Self::new(c)
    }

    pub fn mul(&self, other: &CosinePolynomial) -> CosinePolynomial {
        let s = self.to_sequence().convolve(&other.to_sequence());
        Self::from_symmetric(&s)
    }
}

/// Real polynomial in `z = sin²(πξ)`, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZPolynomial {
    coeffs: Vec<f64>,
}

impl ZPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        ZPolynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `z`.
    pub fn z() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    /// `c − z`.
    pub fn c_minus_z(c: f64) -> Self {
        Self::new(vec![c, -1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
    }

    pub fn mul(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> ZPolynomial {
        (0..e).fold(Self::constant(1.0), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &ZPolynomial) -> ZPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + other.coeffs.get(i).unwrap_or(&0.0))
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, other: &ZPolynomial) -> ZPolynomial {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> ZPolynomial {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Substitutes `z = (1 − cos 2πξ)/2`.
    pub fn to_cosine(&self) -> CosinePolynomial {
        let z = CosinePolynomial::new(vec![0.5, -0.5]);
        let mut acc = CosinePolynomial::constant(0.0);
        for c in self.coeffs.iter().rev() {
            let shifted = acc.mul(&z);
            let mut cc = shifted.coeffs().to_vec();
            cc[0] += c;
            acc = CosinePolynomial::new(cc);
        }
        acc
    }
}
