//! Approximation numbers `a_n` of `W_2^R(T^d) -> L_2(T^d)`.
//!
//! `a_n` is the `n`-th largest weight `(1 + S(k))^{-1/2}`, i.e. the weight of
//! the `n`-th smallest budget counted with multiplicity. It is located by
//! bisection on the monotone step function `t -> #{k : S(k) <= t}`; once the
//! bracket holds few enough points, the shells inside it are enumerated.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, ShellCount, DEFAULT_BUDGET_CAP};
use crate::profile::SmoothnessProfile;

/// Bracket population at which bisection stops and the window is enumerated.
const ENUM_WINDOW: u128 = 4096;

/// Relative bracket width at which bisection on real budgets stops.
const BRACKET_RTOL: f64 = 1e-12;

/// Largest total population `spectrum_prefix` walks in a single pass.
const PREFIX_PASS_LIMIT: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub n: u64,
    /// `a_n = (1 + shell)^{-1/2}`.
    pub value: f64,
    /// Achieved budget `S` of the shell holding rank `n`.
    pub shell: f64,
    pub shell_rank_lo: BigUint,
    pub shell_rank_hi: BigUint,
    /// False only when the shell could not be isolated by enumeration.
    pub exact: bool,
}

/// Weight attached to budget `s`.
pub fn weight(s: f64) -> f64 {
    (1.0 + s).powf(-0.5)
}

fn entry(n: u64, shell: f64, rank_lo: u128, rank_hi: u128, exact: bool) -> SpectrumEntry {
    SpectrumEntry {
        n,
        value: weight(shell),
        shell,
        shell_rank_lo: BigUint::from(rank_lo),
        shell_rank_hi: BigUint::from(rank_hi),
        exact,
    }
}

/// Picks the shell holding rank `n` from a histogram whose first point has rank `base + 1`.
fn pick_shell(shells: &[ShellCount], base: u128, n: u128) -> Option<(f64, u128, u128)> {
    let mut before = base;
    for s in shells {
        if before + s.multiplicity >= n {
            return Some((s.budget, before + 1, before + s.multiplicity));
        }
        before += s.multiplicity;
    }
    None
}

/// Approximation-number engine for one profile.
#[derive(Debug, Clone)]
pub struct Spectrum {
    lattice: Lattice,
    p: f64,
}

impl Spectrum {
    pub fn new(profile: &SmoothnessProfile) -> Self {
        Self {
            lattice: Lattice::new(profile),
            p: profile.p(),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `a_n` together with the shell and rank range it belongs to.
    pub fn approx_number(&self, n: u64) -> Result<SpectrumEntry> {
        if n == 0 {
            return Err(Error::IndexTooSmall {
                min: 1,
                got: n.to_string(),
            });
        }
        if n == 1 {
            return Ok(entry(1, 0.0, 1, 1, true));
        }
        let target = n as u128;
        let count = |t: f64| self.lattice.count_raw(t, false);
        let exact_mode = self.lattice.is_exact();

        // count(lo) < n <= count(hi)
        let mut hi = 1.0f64;
        let mut c_hi = count(hi);
        while c_hi < target {
            hi *= 2.0;
            c_hi = count(hi);
        }
        let mut lo = if hi == 1.0 { 0.0 } else { hi / 2.0 };
        let mut c_lo = count(lo);

        loop {
            let pop = c_hi - c_lo;
            if pop <= ENUM_WINDOW {
                let (shells, _) = self.lattice.shell_counts(Some(lo), hi, usize::MAX);
                let (s, r_lo, r_hi) = pick_shell(&shells, c_lo, target)
                    .expect("window population covers the target rank");
                return Ok(entry(n, s, r_lo, r_hi, true));
            }
            if !exact_mode && hi - lo <= BRACKET_RTOL * hi {
                let (shells, truncated) =
                    self.lattice.shell_counts(Some(lo), hi, DEFAULT_BUDGET_CAP);
                if let (false, Some((s, r_lo, r_hi))) =
                    (truncated, pick_shell(&shells, c_lo, target))
                {
                    return Ok(entry(n, s, r_lo, r_hi, true));
                }
                return Ok(entry(n, 0.5 * (lo + hi), c_lo + 1, c_hi, false));
            }
            let mid = if exact_mode {
                (0.5 * (lo + hi)).floor()
            } else {
                0.5 * (lo + hi)
            };
            // no budget strictly between: every point in (lo, hi] reports as hi
            if exact_mode && (mid <= lo || mid >= hi) {
                return Ok(entry(n, hi, c_lo + 1, c_hi, true));
            }
            let c_mid = count(mid);
            if c_mid >= target {
                hi = mid;
                c_hi = c_mid;
            } else {
                lo = mid;
                c_lo = c_mid;
            }
        }
    }

    /// One entry per shell, in increasing budget, covering ranks `1..=n_max`.
    /// Each entry carries the full rank range of its shell, so the last one
    /// may extend past `n_max`.
    pub fn spectrum_prefix(&self, n_max: u64) -> Result<Vec<SpectrumEntry>> {
        let last = self.approx_number(n_max)?;
        let total = last.shell_rank_hi.to_u128().expect("rank fits in u128");
        if last.exact && total <= PREFIX_PASS_LIMIT {
            let (shells, _) = self.lattice.shell_counts(None, last.shell, usize::MAX);
            let mut out = Vec::with_capacity(shells.len());
            let mut before = 0u128;
            for s in shells {
                let lo = before + 1;
                let hi = before + s.multiplicity;
                out.push(entry(lo as u64, s.budget, lo, hi, true));
                before = hi;
            }
            debug_assert_eq!(before, total);
            return Ok(out);
        }
        let mut out = Vec::new();
        let mut n = 1u64;
        while n <= n_max {
            let e = self.approx_number(n)?;
            let next = e.shell_rank_hi.to_u128().expect("rank fits in u128");
            out.push(SpectrumEntry { n, ..e });
            n = u64::try_from(next + 1).unwrap_or(u64::MAX);
        }
        Ok(out)
    }

    /// `C(m, R, d) = #{k : S(k) <= m^{2p}}`.
    pub fn count_c(&self, m: u64) -> BigUint {
        BigUint::from(self.count_c_raw(m))
    }

    pub(crate) fn count_c_raw(&self, m: u64) -> u128 {
        self.lattice.count_raw(power_2p(self.p, m), false)
    }
}

/// `m^{2p}`.
pub fn c_budget(profile: &SmoothnessProfile, m: u64) -> f64 {
    power_2p(profile.p(), m)
}

fn power_2p(p: f64, m: u64) -> f64 {
    let e = 2.0 * p;
    if e.fract() == 0.0 && e <= 60.0 {
        (m as f64).powi(e as i32)
    } else {
        (m as f64).powf(e)
    }
}

pub fn approx_number(profile: &SmoothnessProfile, n: u64) -> Result<SpectrumEntry> {
    Spectrum::new(profile).approx_number(n)
}

pub fn spectrum_prefix(profile: &SmoothnessProfile, n_max: u64) -> Result<Vec<SpectrumEntry>> {
    Spectrum::new(profile).spectrum_prefix(n_max)
}

pub fn count_c(profile: &SmoothnessProfile, m: u64) -> BigUint {
    Spectrum::new(profile).count_c(m)
}
