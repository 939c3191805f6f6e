//! Volumes of generalized balls `B_r^d = {x : Σ_j |x_j|^{r_j} <= 1}` and the
//! constants that bracket them. All arithmetic is in the natural-log domain.

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::profile::SmoothnessProfile;

/// Natural log of a volume (or of a constant derived from one).
#[derive(Debug, Clone, PartialEq)]
pub struct LogVolume {
    pub log_value: f64,
    pub d: usize,
    pub exponents: Vec<f64>,
}

impl LogVolume {
    /// `exp(log_value)`; overflows to infinity for large balls.
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

fn check_exponents(exponents: &[f64]) -> Result<()> {
    if exponents.is_empty() {
        return Err(Error::EmptyProfile);
    }
    match exponents
        .iter()
        .enumerate()
        .find(|(_, r)| !(r.is_finite() && **r > 0.0))
    {
        Some((index, &value)) => Err(Error::InvalidExponent { index, value }),
        None => Ok(()),
    }
}

/// `ln vol(B_r^d) = d ln 2 + Σ ln Γ(1 + 1/r_j) - ln Γ(1 + Σ 1/r_j)`.
pub fn log_volume_ball(exponents: &[f64]) -> Result<LogVolume> {
    check_exponents(exponents)?;
    let d = exponents.len();
    let inv_sum: f64 = exponents.iter().map(|r| r.recip()).sum();
    let log_value = d as f64 * std::f64::consts::LN_2
        + exponents.iter().map(|r| ln_gamma(1.0 + r.recip())).sum::<f64>()
        - ln_gamma(1.0 + inv_sum);
    Ok(LogVolume {
        log_value,
        d,
        exponents: exponents.to_vec(),
    })
}

/// `ln vol(B_r^d(t))` for `B_r^d(t) = {x : Σ |x_j|^{r_j} <= t}`, which scales as
/// `t^{Σ 1/r_j} vol(B_r^d)`.
pub fn log_scaled_volume(exponents: &[f64], t: f64) -> Result<LogVolume> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange {
            what: "scale",
            detail: format!("t = {t} must be positive and finite"),
        });
    }
    let mut v = log_volume_ball(exponents)?;
    v.log_value += exponents.iter().map(|r| r.recip()).sum::<f64>() * t.ln();
    Ok(v)
}

/// `2R` for a smoothness profile.
pub fn doubled(profile: &SmoothnessProfile) -> Vec<f64> {
    profile.exponents().iter().map(|r| 2.0 * r).collect()
}

/// `ln vol(B_{2R}^d)`.
pub fn log_volume_2r(profile: &SmoothnessProfile) -> f64 {
    log_volume_ball(&doubled(profile))
        .expect("profile exponents are validated")
        .log_value
}

/// `ln (vol(B_{2R}^d))^{g(R)}`.
pub fn log_strong_equiv_constant(profile: &SmoothnessProfile) -> f64 {
    profile.harmonic() * log_volume_2r(profile)
}

/// `vol(B_{2R}^d)^{g(R)}`, the limit of `n^{g(R)} a_n`.
pub fn strong_equiv_constant(profile: &SmoothnessProfile) -> f64 {
    log_strong_equiv_constant(profile).exp()
}

/// `((x/e)^x, (1+x)^x)`, which brackets `Γ(1+x)` for `x >= 0`; `0^0 = 1`.
pub fn gamma_bracket(x: f64) -> (f64, f64) {
    let (lo, hi) = log_gamma_bracket(x);
    (lo.exp(), hi.exp())
}

/// Log-domain [`gamma_bracket`].
pub fn log_gamma_bracket(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    (x * (x.ln() - 1.0), x * x.ln_1p())
}

/// Two-sided bracket on `vol(B_{2R}^d)^{g(R)}`:
/// lower `2^v (e(d+2u))^{-1/2}`, upper `2^u ((2v+1)/(2v))^{u/(2v)} (2eu/d)^{1/2}`.
pub fn volume_constant_bracket(profile: &SmoothnessProfile) -> (f64, f64) {
    let (lo, hi) = log_volume_constant_bracket(profile);
    (lo.exp(), hi.exp())
}

pub fn log_volume_constant_bracket(profile: &SmoothnessProfile) -> (f64, f64) {
    let (u, v) = (profile.max(), profile.min());
    let d = profile.dim() as f64;
    let e = std::f64::consts::E;
    let ln2 = std::f64::consts::LN_2;
    let lower = v * ln2 - 0.5 * (e * (d + 2.0 * u)).ln();
    let upper = u * ln2
        + (u / (2.0 * v)) * ((2.0 * v + 1.0) / (2.0 * v)).ln()
        + 0.5 * (2.0 * e * u / d).ln();
    (lower, upper)
}
