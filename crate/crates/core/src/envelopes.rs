//! Explicit bounds on `a_n(I_d : W_2^R(T^d) -> L_2(T^d))`.
//!
//! Three regimes: `a_n ≍ 1` for `n <= d`, the preasymptotic profile
//! `(log(1 + d/log n) / log n)^{1/2}` for `d <= n <= 3^d` (base-2 logs), and
//! `d^{-1/2} n^{-g(R)}` beyond. Explicit constants exist only past the
//! crossover `n > E^d`; elsewhere the comparison values are advisory.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::profile::SmoothnessProfile;
use crate::spectrum::{c_budget, Spectrum};
use crate::volumetrics::{log_strong_equiv_constant, log_volume_2r};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `1 <= n <= d`
    Small,
    /// `d < n <= 3^d`
    Preasymptotic,
    /// `n > 3^d`
    Asymptotic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Small => "SMALL",
            Regime::Preasymptotic => "PREASYMPTOTIC",
            Regime::Asymptotic => "ASYMPTOTIC",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub regime: Regime,
    /// Order-of-magnitude comparison value for the regime (constants implicit).
    pub comparison: f64,
    /// At `n = d` or `n = 3^d` the neighbouring branch's value as well.
    pub boundary: Option<(Regime, f64)>,
    pub lower: Option<f64>,
    /// Upper bound with the larger `(1 + (2v+1)/(2v))^{u/(2v)}` factor.
    pub upper: Option<f64>,
    /// Upper bound with the tighter `((2v+1)/(2v))^{u/(2v)}` factor.
    pub upper_tight: Option<f64>,
    /// True only past the crossover `ln n > d ln E`.
    pub guaranteed: bool,
}

/// `(log(1 + d/log n) / log n)^{1/2}` with base-2 logarithms; needs `n >= 2`.
pub fn preasymptotic_value(d: u32, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::IndexTooSmall {
            min: 2,
            got: n.to_string(),
        });
    }
    Ok(preasymptotic_value_log2(d, (n as f64).log2()))
}

/// [`preasymptotic_value`] given `log2 n > 0` directly.
pub fn preasymptotic_value_log2(d: u32, log2_n: f64) -> f64 {
    ((1.0 + d as f64 / log2_n).log2() / log2_n).sqrt()
}

/// Log-constants `(ln c_lower, ln c_upper, ln c_upper_tight)` with
/// `c_lower n^{-g} <= a_n <= c_upper n^{-g}` past the crossover.
pub fn asymptotic_constants(profile: &SmoothnessProfile) -> (f64, f64, f64) {
    let (u, v, p) = (profile.max(), profile.min(), profile.p());
    let d = profile.dim() as f64;
    let e = std::f64::consts::E;
    let ln2 = std::f64::consts::LN_2;
    let lower = (v - p) * ln2 - 0.5 * (e * (d + 2.0 * u)).ln();
    let common = (p + u) * ln2 + 0.5 * (2.0 * e * u / d).ln();
    let ratio = (2.0 * v + 1.0) / (2.0 * v);
    let upper = common + (u / (2.0 * v)) * (1.0 + ratio).ln();
    let upper_tight = common + (u / (2.0 * v)) * ratio.ln();
    (lower, upper, upper_tight)
}

fn regime_of(d: u32, n: u64) -> (Regime, bool) {
    // 3^d as u128 is exact up to d = 80; beyond, every u64 index is below it.
    let three_d = if d <= 80 { Some(3u128.pow(d)) } else { None };
    let n128 = n as u128;
    if n <= d as u64 {
        (Regime::Small, n == d as u64)
    } else if three_d.is_none_or(|t| n128 <= t) {
        (Regime::Preasymptotic, three_d == Some(n128))
    } else {
        (Regime::Asymptotic, false)
    }
}

/// Bounds `c n^{-g}` with the explicit constants; `guaranteed` only past the crossover.
pub fn asymptotic_envelope(profile: &SmoothnessProfile, n: u64) -> Result<Envelope> {
    if n == 0 {
        return Err(Error::IndexTooSmall { min: 1, got: "0".into() });
    }
    let d = profile.dim() as u32;
    let ln_n = (n as f64).ln();
    let g = profile.harmonic();
    let (lo, hi, tight) = asymptotic_constants(profile);
    let decay = -g * ln_n;
    Ok(Envelope {
        regime: regime_of(d, n).0,
        comparison: (-0.5 * (d as f64).ln() + decay).exp(),
        boundary: None,
        lower: Some((lo + decay).exp()),
        upper: Some((hi + decay).exp()),
        upper_tight: Some((tight + decay).exp()),
        guaranteed: profile.past_crossover(ln_n),
    })
}

/// Regime classification with the comparison value of each branch.
pub fn piecewise_envelope(profile: &SmoothnessProfile, n: u64) -> Result<Envelope> {
    if n == 0 {
        return Err(Error::IndexTooSmall { min: 1, got: "0".into() });
    }
    let d = profile.dim() as u32;
    let asym_value = |n: u64| (-0.5 * (d as f64).ln() - profile.harmonic() * (n as f64).ln()).exp();
    let (regime, at_boundary) = regime_of(d, n);
    let blank = |comparison, boundary| Envelope {
        regime,
        comparison,
        boundary,
        lower: None,
        upper: None,
        upper_tight: None,
        guaranteed: false,
    };
    Ok(match regime {
        Regime::Small => {
            let boundary = (at_boundary && n >= 2)
                .then(|| (Regime::Preasymptotic, preasymptotic_value(d, n).expect("n >= 2")));
            blank(1.0, boundary)
        }
        Regime::Preasymptotic => {
            let value = preasymptotic_value(d, n).expect("n > d >= 1");
            let boundary = at_boundary.then(|| (Regime::Asymptotic, asym_value(n)));
            blank(value, boundary)
        }
        Regime::Asymptotic => {
            let mut env = asymptotic_envelope(profile, n)?;
            env.comparison = asym_value(n);
            env
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sandwich {
    /// `(m - b_R)_+^{p/g} vol(B_{2R}^d)`
    pub lower: f64,
    /// `C(m, R, d)`
    pub count: BigUint,
    /// `(m + b_R)^{p/g} vol(B_{2R}^d)`
    pub upper: f64,
}

/// Volume bounds around `C(m, R, d)`.
pub fn counting_sandwich(profile: &SmoothnessProfile, m: u64) -> Result<Sandwich> {
    let (lower, upper) = sandwich_bounds(profile, m)?;
    Ok(Sandwich {
        lower,
        count: Spectrum::new(profile).count_c(m),
        upper,
    })
}

/// The two volume bounds of [`counting_sandwich`] without the count.
pub fn sandwich_bounds(profile: &SmoothnessProfile, m: u64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "m",
            detail: "m must be at least 1".into(),
        });
    }
    let b = profile.shell_offset();
    let expo = profile.p() / profile.harmonic();
    let ln_vol = log_volume_2r(profile);
    let m = m as f64;
    let lower = if m > b {
        (expo * (m - b).ln() + ln_vol).exp()
    } else {
        0.0
    };
    let upper = (expo * (m + b).ln() + ln_vol).exp();
    Ok((lower, upper))
}

/// Upper bound `(t^{1/(2p)} + b_R)^{p/g} vol(B_{2R}^d)` on `#{k : S(k) <= t}`.
pub fn count_upper_bound(profile: &SmoothnessProfile, t: f64) -> f64 {
    let m = t.max(0.0).powf(0.5 / profile.p());
    let expo = profile.p() / profile.harmonic();
    (expo * (m + profile.shell_offset()).ln() + log_volume_2r(profile)).exp()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrongEquivBracket {
    /// Shell index with `C(m-1) < n <= C(m)`.
    pub m: u64,
    /// `C(m-1)^g (1 + m^{2p})^{-1/2}`
    pub lower: f64,
    /// `C(m)^g (1 + (m-1)^{2p})^{-1/2}`
    pub upper: f64,
    /// `(m - 1 - b_R)_+^p vol^g (1 + m^{2p})^{-1/2}`, from `C(m-1) >= (m-1-b_R)_+^{p/g} vol`.
    pub volume_lower: f64,
    /// `(m + b_R)^p vol^g (1 + (m-1)^{2p})^{-1/2}`
    pub volume_upper: f64,
    /// `vol(B_{2R}^d)^g`, the common limit.
    pub limit: f64,
}

/// Bracket on `n^g a_n` from the counting staircase; both ends tend to
/// `vol(B_{2R}^d)^g` as `n -> ∞`.
pub fn strong_equiv_bracket(profile: &SmoothnessProfile, n: u64) -> Result<StrongEquivBracket> {
    if n < 2 {
        return Err(Error::IndexTooSmall {
            min: 2,
            got: n.to_string(),
        });
    }
    let sp = Spectrum::new(profile);
    let target = n as u128;
    // smallest m with C(m) >= n; C(0) = 1 < n
    let mut hi = 1u64;
    while sp.count_c_raw(hi) < target {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if sp.count_c_raw(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let m = hi;
    let c_m = sp.count_c_raw(m).to_f64().expect("finite");
    let c_prev = sp.count_c_raw(m - 1).to_f64().expect("finite");
    let g = profile.harmonic();
    let p = profile.p();
    let b = profile.shell_offset();
    let ln_limit = log_strong_equiv_constant(profile);
    let ln_w_m = -0.5 * (1.0 + c_budget(profile, m)).ln();
    let ln_w_prev = -0.5 * (1.0 + c_budget(profile, m - 1)).ln();
    let mf = m as f64;
    let volume_lower = if mf - 1.0 > b {
        (p * (mf - 1.0 - b).ln() + ln_limit + ln_w_m).exp()
    } else {
        0.0
    };
    Ok(StrongEquivBracket {
        m,
        lower: (g * c_prev.ln() + ln_w_m).exp(),
        upper: (g * c_m.ln() + ln_w_prev).exp(),
        volume_lower,
        volume_upper: (p * (mf + b).ln() + ln_limit + ln_w_prev).exp(),
        limit: ln_limit.exp(),
    })
}
