//! Information complexity `n(ε, d) = min{n : a_{n+1} <= ε}` and
//! `(α, β)`-weak-tractability diagnostics.
//!
//! Because the approximation numbers are a rearrangement of weights,
//! `n(ε, d)` is the number of weights strictly above `ε`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bigmath::ln_biguint;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::limitspace::{limit_count, limit_weight};
use crate::profile::SmoothnessProfile;
use crate::spectrum::weight;

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Aniso(SmoothnessProfile),
    Limit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TractabilityReport {
    pub eps: f64,
    pub d: u32,
    pub n_eps: BigUint,
    pub alpha: f64,
    pub beta: f64,
    /// `ln max(n_eps, 1) / (ε^{-α} + d^β)`
    pub ratio: f64,
    pub space: Space,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "eps",
            detail: format!("eps = {eps} must lie in (0, 1]"),
        })
    }
}

/// `#{k ∈ Z^d : (1 + S(k))^{-1/2} > ε}`.
pub fn info_complexity(profile: &SmoothnessProfile, eps: f64) -> Result<BigUint> {
    check_eps(eps)?;
    if eps == 1.0 {
        return Ok(BigUint::zero());
    }
    let lattice = Lattice::new(profile);
    let t = eps.powi(-2) - 1.0;
    // Budgets within rounding of the threshold are decided on the weight itself.
    let slack = 1e-9 * t.max(1.0);
    let below = (t - slack).max(0.0);
    let mut n = lattice.count_raw(below, false);
    let (shells, _) = lattice.shell_counts(Some(below), t + slack, usize::MAX);
    n += shells
        .iter()
        .filter(|s| weight(s.budget) > eps)
        .map(|s| s.multiplicity)
        .sum::<u128>();
    Ok(BigUint::from(n))
}

/// `#{k ∈ {-1,0,1}^d : (1 + Σ|k_j|)^{-1/2} > ε}`, at most `3^d`.
pub fn limit_info_complexity(d: u32, eps: f64) -> Result<BigUint> {
    check_eps(eps)?;
    if d == 0 {
        return Err(Error::OutOfRange {
            what: "d",
            detail: "dimension must be positive".into(),
        });
    }
    match (0..=d).take_while(|&m| limit_weight(m) > eps).last() {
        Some(m) => Ok(limit_count(d, m)?.cumulative),
        None => Ok(BigUint::zero()),
    }
}

/// `ln max(n_eps, 1) / (ε^{-α} + d^β)`.
pub fn wt_ratio(n_eps: &BigUint, eps: f64, d: u32, alpha: f64, beta: f64) -> f64 {
    let ln_n = if n_eps.is_zero() { 0.0 } else { ln_biguint(n_eps) };
    ln_n / (eps.powf(-alpha) + (d as f64).powf(beta))
}

/// `ε_d = (2 + d)^{-1/2}`, at which the limit space needs all `3^d` functionals.
pub fn witness_eps(d: u32) -> f64 {
    (2.0 + d as f64).sqrt().recip()
}

/// Whether `n(ε_d, d) >= (1 + γ)^d` for the limit space.
pub fn curse_witness(d: u32, gamma: f64) -> Result<bool> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::OutOfRange {
            what: "gamma",
            detail: format!("gamma = {gamma} must be positive"),
        });
    }
    let n = limit_info_complexity(d, witness_eps(d))?;
    let base = 1.0 + gamma;
    if base.fract() == 0.0 && base < 2f64.powi(53) {
        return Ok(n >= BigUint::from(base as u64).pow(d));
    }
    Ok(ln_biguint(&n) >= d as f64 * gamma.ln_1p())
}

impl TractabilityReport {
    pub fn aniso(profile: &SmoothnessProfile, eps: f64, alpha: f64, beta: f64) -> Result<Self> {
        let n_eps = info_complexity(profile, eps)?;
        let d = profile.dim() as u32;
        Ok(Self {
            ratio: wt_ratio(&n_eps, eps, d, alpha, beta),
            eps,
            d,
            n_eps,
            alpha,
            beta,
            space: Space::Aniso(profile.clone()),
        })
    }

    pub fn limit(d: u32, eps: f64, alpha: f64, beta: f64) -> Result<Self> {
        let n_eps = limit_info_complexity(d, eps)?;
        Ok(Self {
            ratio: wt_ratio(&n_eps, eps, d, alpha, beta),
            eps,
            d,
            n_eps,
            alpha,
            beta,
            space: Space::Limit,
        })
    }

    /// Limit-space report along the witness sequence `ε_d`.
    pub fn limit_witness(d: u32, alpha: f64, beta: f64) -> Result<Self> {
        Self::limit(d, witness_eps(d), alpha, beta)
    }

    /// `n_eps` as `f64` when it fits.
    pub fn n_eps_f64(&self) -> Option<f64> {
        self.n_eps.to_f64().filter(|v| v.is_finite())
    }

    pub fn is_trivial(&self) -> bool {
        self.n_eps <= BigUint::one()
    }
}
