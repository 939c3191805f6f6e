//! The smoothness vector `R` and the scalars derived from it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Smoothness vector `R = (R_1, ..., R_d)` of an anisotropic Sobolev space
/// `W_2^R(T^d)`, together with cached derived quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessProfile {
    exponents: Vec<f64>,
    max: f64,
    min: f64,
    harmonic: f64,
    p: f64,
    shell_offset: f64,
    ln_crossover: f64,
    isotropic: bool,
}

/// `x^t` for `x >= 0`, `t > 0`, with `0^t = 0`.
#[inline]
pub(crate) fn pow_nonneg(x: f64, t: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (t * x.ln()).exp()
    }
}

impl SmoothnessProfile {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if let Some((index, &value)) = exponents
            .iter()
            .enumerate()
            .find(|(_, r)| !(r.is_finite() && **r > 0.0))
        {
            return Err(Error::InvalidExponent { index, value });
        }
        let max = exponents.iter().copied().fold(f64::MIN, f64::max);
        let min = exponents.iter().copied().fold(f64::MAX, f64::min);
        let isotropic = exponents.iter().all(|&r| r == exponents[0]);
        let d = exponents.len() as f64;
        let harmonic = if isotropic {
            exponents[0] / d
        } else {
            1.0 / exponents.iter().map(|r| r.recip()).sum::<f64>()
        };
        let p = max.max(0.5);
        let shell_offset = exponents
            .iter()
            .map(|&r| pow_nonneg(0.5, 2.0 * r))
            .sum::<f64>()
            .powf(1.0 / (2.0 * p));
        let (u, v) = (max, min);
        let ln_crossover = (p / v) * 4f64.ln()
            + (u / v) * 2f64.ln()
            + (u / (2.0 * v * v)) * (1.0 + 1.0 / (2.0 * v)).ln()
            + (1.0 / (2.0 * v)) * (2.0 * std::f64::consts::E * p).ln();
        Ok(Self {
            exponents,
            max,
            min,
            harmonic,
            p,
            shell_offset,
            ln_crossover,
            isotropic,
        })
    }

    /// Isotropic profile `(s, ..., s)` of dimension `d`.
    pub fn isotropic(s: f64, d: usize) -> Result<Self> {
        Self::new(vec![s; d])
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// `u = max R_j`.
    pub fn max(&self) -> f64 {
        self.max
    }

    /// `v = min R_j`.
    pub fn min(&self) -> f64 {
        self.min
    }

    /// Harmonic exponent `g(R) = 1 / (1/R_1 + ... + 1/R_d)`, the asymptotic decay rate.
    pub fn harmonic(&self) -> f64 {
        self.harmonic
    }

    /// `p = max{1/2, u}`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// `b_R = (sum_j (1/2)^{2 R_j})^{1/(2p)}`, the half-cube offset in the quasi-norm.
    pub fn shell_offset(&self) -> f64 {
        self.shell_offset
    }

    /// Natural log of the crossover constant `E` beyond which explicit
    /// asymptotic constants hold (`n > E^d`).
    pub fn ln_crossover(&self) -> f64 {
        self.ln_crossover
    }

    pub fn is_isotropic(&self) -> bool {
        self.isotropic
    }

    /// True when `ln n > d ln E`; equality is not past the threshold.
    pub fn past_crossover(&self, ln_n: f64) -> bool {
        ln_n > self.dim() as f64 * self.ln_crossover
    }

    /// `(sum_j |x_j|^{2 R_j})^{1/(2p)}`, a quasi-norm satisfying the triangle inequality.
    pub fn quasi_norm(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let sum: f64 = x
            .iter()
            .zip(&self.exponents)
            .map(|(xi, r)| pow_nonneg(xi.abs(), 2.0 * r))
            .sum();
        Ok(pow_nonneg(sum, 1.0 / (2.0 * self.p)))
    }
}

impl fmt::Display for SmoothnessProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Accepts `"1,2,0.5"` or the isotropic shorthand `"s^d"` (e.g. `"1.5^8"`).
impl FromStr for SmoothnessProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::ParseProfile {
            input: s.to_string(),
            reason,
        };
        let s = s.trim();
        if let Some((base, dim)) = s.split_once('^') {
            let r: f64 = base
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad entry {base:?}: {e}")))?;
            let d: usize = dim
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad dimension {dim:?}: {e}")))?;
            return Self::isotropic(r, d);
        }
        let exponents = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|e| parse_err(format!("bad entry {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(exponents)
    }
}
