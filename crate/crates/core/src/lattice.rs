//! Exact counting and enumeration of lattice points `k ∈ Z^d` under the
//! anisotropic budget `S(k) = Σ_j |k_j|^{2 R_j}`.
//!
//! Coordinates are walked in descending `R_j` order and only `k_j >= 0` is
//! branched on, with multiplicity 2 for nonzero entries. Budgets are summed in
//! that fixed order, so every routine here (counting, enumeration, `budget`)
//! sees the same floating-point value `S(k)` for a given point. When every
//! `2 R_j` is an integer the budgets are tracked as exact `u128` integers
//! instead.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::profile::SmoothnessProfile;

/// Default bound on the number of distinct budgets [`Lattice::achieved_budgets`] returns.
pub const DEFAULT_BUDGET_CAP: usize = 1_000_000;

/// Top-level branching factor above which counting fans out over rayon.
const PAR_THRESHOLD: u64 = 64;

/// Largest integral `2 R_j` tracked exactly.
const MAX_EXACT_EXPONENT: f64 = 126.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    pub count: BigUint,
    pub budget: f64,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub k: Vec<i64>,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AchievedBudgets {
    /// Sorted ascending, distinct.
    pub budgets: Vec<f64>,
    pub truncated: bool,
}

/// One achieved budget and the number of lattice points attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ShellCount {
    pub budget: f64,
    pub multiplicity: u128,
}

trait Scale: Sync {
    type B: Copy + PartialOrd + Send + Sync;

    fn dims(&self) -> usize;
    fn zero(&self) -> Self::B;
    /// `|k|^{2R}` for the coordinate at `level`, `k >= 1`.
    fn term(&self, level: usize, k: u64) -> Self::B;
    fn add(&self, a: Self::B, b: Self::B) -> Self::B;
    /// Rough `floor((t - acc)^{1/(2R)})`; corrected by the caller.
    fn estimate(&self, level: usize, acc: Self::B, t: Self::B) -> u64;
    fn to_f64(&self, b: Self::B) -> f64;

    #[inline]
    fn term_or_zero(&self, level: usize, k: u64) -> Self::B {
        if k == 0 {
            self.zero()
        } else {
            self.term(level, k)
        }
    }
}

#[derive(Debug, Clone)]
struct ExactScale {
    exponents: Vec<u32>,
}

#[derive(Debug, Clone)]
enum FloatTerm {
    Int(i32),
    Real(f64),
}

#[derive(Debug, Clone)]
struct FloatScale {
    terms: Vec<FloatTerm>,
    exponents: Vec<f64>,
}

impl Scale for ExactScale {
    type B = u128;

    fn dims(&self) -> usize {
        self.exponents.len()
    }

    fn zero(&self) -> u128 {
        0
    }

    #[inline]
    fn term(&self, level: usize, k: u64) -> u128 {
        (k as u128)
            .checked_pow(self.exponents[level])
            .unwrap_or(u128::MAX)
    }

    #[inline]
    fn add(&self, a: u128, b: u128) -> u128 {
        a.saturating_add(b)
    }

    fn estimate(&self, level: usize, acc: u128, t: u128) -> u64 {
        if t <= acc {
            return 0;
        }
        let est = ((t - acc) as f64).powf(1.0 / self.exponents[level] as f64);
        est.floor().min(u64::MAX as f64 / 4.0) as u64
    }

    fn to_f64(&self, b: u128) -> f64 {
        b as f64
    }
}

impl Scale for FloatScale {
    type B = f64;

    fn dims(&self) -> usize {
        self.terms.len()
    }

    fn zero(&self) -> f64 {
        0.0
    }

    #[inline]
    fn term(&self, level: usize, k: u64) -> f64 {
        match self.terms[level] {
            FloatTerm::Int(e) => (k as f64).powi(e),
            FloatTerm::Real(e) => (e * (k as f64).ln()).exp(),
        }
    }

    #[inline]
    fn add(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    fn estimate(&self, level: usize, acc: f64, t: f64) -> u64 {
        if t <= acc {
            return 0;
        }
        let est = (t - acc).powf(1.0 / self.exponents[level]);
        est.floor().min(u64::MAX as f64 / 4.0) as u64
    }

    fn to_f64(&self, b: f64) -> f64 {
        b
    }
}

#[inline]
fn admits<B: PartialOrd>(s: B, t: B, strict: bool) -> bool {
    if strict {
        s < t
    } else {
        s <= t
    }
}

/// Largest `k` with `acc + term(k)` admitted by `t`; requires `acc` itself admitted.
fn max_k<S: Scale>(s: &S, level: usize, acc: S::B, t: S::B, strict: bool) -> u64 {
    let mut k = s.estimate(level, acc, t);
    while k > 0 && !admits(s.add(acc, s.term(level, k)), t, strict) {
        k -= 1;
    }
    while admits(s.add(acc, s.term(level, k + 1)), t, strict) {
        k += 1;
    }
    k
}

fn count_rec<S: Scale>(s: &S, level: usize, acc: S::B, t: S::B, strict: bool) -> u128 {
    // Every nonzero entry costs at least 1^{2R} = 1.
    if !admits(s.add(acc, s.term(level, 1)), t, strict) {
        return 1;
    }
    let kmax = max_k(s, level, acc, t, strict);
    if level + 1 == s.dims() {
        return 2 * kmax as u128 + 1;
    }
    let branch = |k: u64| count_rec(s, level + 1, s.add(acc, s.term(level, k)), t, strict);
    let zero = count_rec(s, level + 1, acc, t, strict);
    let rest: u128 = if level == 0 && kmax >= PAR_THRESHOLD {
        (1..=kmax).into_par_iter().map(branch).sum()
    } else {
        (1..=kmax).map(branch).sum()
    };
    zero + 2 * rest
}

fn count_from_root<S: Scale>(s: &S, t: S::B, strict: bool) -> u128 {
    if !admits(s.zero(), t, strict) {
        return 0;
    }
    count_rec(s, 0, s.zero(), t, strict)
}

/// Visits every nonnegative representative `k >= 0` with `lo < S(k) <= hi`
/// (or `0 <= S(k) <= hi` when `lo` is `None`).
fn walk_window<S, F>(
    s: &S,
    level: usize,
    acc: S::B,
    lo: Option<S::B>,
    hi: S::B,
    ks: &mut Vec<u64>,
    visit: &mut F,
) where
    S: Scale,
    F: FnMut(&[u64], S::B),
{
    let d = s.dims();
    let above_lo = |v: S::B| lo.is_none_or(|l| v > l);
    if !admits(s.add(acc, s.term(level, 1)), hi, false) {
        if above_lo(acc) {
            let len = ks.len();
            ks.resize(d, 0);
            visit(ks, acc);
            ks.truncate(len);
        }
        return;
    }
    let kmax = max_k(s, level, acc, hi, false);
    if level + 1 == d {
        let kmin = match lo {
            Some(l) if !(acc > l) => max_k(s, level, acc, l, false) + 1,
            _ => 0,
        };
        for k in kmin..=kmax {
            ks.push(k);
            visit(ks, s.add(acc, s.term_or_zero(level, k)));
            ks.pop();
        }
        return;
    }
    for k in 0..=kmax {
        ks.push(k);
        walk_window(s, level + 1, s.add(acc, s.term_or_zero(level, k)), lo, hi, ks, visit);
        ks.pop();
    }
}

#[derive(Debug, Clone)]
enum Arith {
    Exact(ExactScale),
    Float(FloatScale),
}

/// Exact-integer threshold equivalent to `S <= t` (or `S < t`), `None` when nothing qualifies.
/// Largest integer budget `b` with `b as f64 <= t` (`< t` when `strict`).
/// Above 2^53 integer budgets compare after rounding, as they are reported.
fn exact_threshold(t: f64, strict: bool) -> Option<u128> {
    let t = if strict {
        if t <= 0.0 {
            return None;
        }
        t.next_down()
    } else {
        t
    };
    if t < 0.0 {
        return None;
    }
    if t < 9_007_199_254_740_992.0 {
        return Some(t.floor() as u128);
    }
    let half_ulp = (t.next_up() - t) / 2.0;
    let mut b = t as u128 + half_ulp as u128;
    while b as f64 > t {
        b -= 1;
    }
    Some(b)
}

fn check_budget(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidBudget(t))
    }
}

fn check_window(lo: f64, hi: f64) -> Result<()> {
    check_budget(lo)?;
    check_budget(hi)?;
    if lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    Ok(())
}

/// Counting engine for one smoothness profile.
#[derive(Debug, Clone)]
pub struct Lattice {
    /// `order[level]` is the original coordinate walked at `level`.
    order: Vec<usize>,
    arith: Arith,
}

impl Lattice {
    pub fn new(profile: &SmoothnessProfile) -> Self {
        let r = profile.exponents();
        let mut order: Vec<usize> = (0..r.len()).collect();
        order.sort_by(|&a, &b| r[b].total_cmp(&r[a]).then(a.cmp(&b)));
        let exps: Vec<f64> = order.iter().map(|&i| 2.0 * r[i]).collect();
        let integral = |e: f64| e.fract() == 0.0 && e <= MAX_EXACT_EXPONENT;
        let arith = if exps.iter().all(|&e| integral(e)) {
            Arith::Exact(ExactScale {
                exponents: exps.iter().map(|&e| e as u32).collect(),
            })
        } else {
            Arith::Float(FloatScale {
                terms: exps
                    .iter()
                    .map(|&e| {
                        if integral(e) {
                            FloatTerm::Int(e as i32)
                        } else {
                            FloatTerm::Real(e)
                        }
                    })
                    .collect(),
                exponents: exps,
            })
        };
        Self { order, arith }
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Whether budgets are tracked as exact integers (all `2 R_j` integral).
    pub fn is_exact(&self) -> bool {
        matches!(self.arith, Arith::Exact(_))
    }

    /// `S(k) = Σ_j |k_j|^{2 R_j}`.
    pub fn budget(&self, k: &[i64]) -> Result<f64> {
        if k.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: k.len(),
            });
        }
        fn sum<S: Scale>(s: &S, order: &[usize], k: &[i64]) -> f64 {
            let acc = order.iter().enumerate().fold(s.zero(), |acc, (level, &i)| {
                s.add(acc, s.term_or_zero(level, k[i].unsigned_abs()))
            });
            s.to_f64(acc)
        }
        Ok(match &self.arith {
            Arith::Exact(s) => sum(s, &self.order, k),
            Arith::Float(s) => sum(s, &self.order, k),
        })
    }

    pub(crate) fn count_raw(&self, t: f64, strict: bool) -> u128 {
        match &self.arith {
            Arith::Exact(s) => match exact_threshold(t, strict) {
                Some(ti) => count_from_root(s, ti, false),
                None => 0,
            },
            Arith::Float(s) => count_from_root(s, t, strict),
        }
    }

    /// Number of `k ∈ Z^d` with `S(k) <= t` (or `< t` when `strict`).
    pub fn count(&self, t: f64, strict: bool) -> Result<CountResult> {
        check_budget(t)?;
        Ok(CountResult {
            count: BigUint::from(self.count_raw(t, strict)),
            budget: t,
            strict,
        })
    }

    fn walk<F: FnMut(&[u64], f64)>(&self, lo: Option<f64>, hi: f64, mut visit: F) {
        let mut ks = Vec::with_capacity(self.dim());
        match &self.arith {
            Arith::Exact(s) => {
                let hi_i = exact_threshold(hi, false).expect("hi >= 0");
                let lo_i = lo.map(|l| exact_threshold(l, false).expect("lo >= 0"));
                walk_window(s, 0, 0, lo_i, hi_i, &mut ks, &mut |k, b| {
                    visit(k, b as f64)
                });
            }
            Arith::Float(s) => walk_window(s, 0, 0.0, lo, hi, &mut ks, &mut visit),
        }
    }

    /// Every lattice point with `lo < S(k) <= hi`, each exactly once.
    pub fn enumerate_shell(&self, lo: f64, hi: f64) -> Result<Vec<LatticePoint>> {
        check_window(lo, hi)?;
        let mut out = Vec::new();
        let d = self.dim();
        self.walk(Some(lo), hi, |rep, budget| {
            let mut k = vec![0i64; d];
            for (level, &v) in rep.iter().enumerate() {
                k[self.order[level]] = v as i64;
            }
            let nonzero: Vec<usize> = (0..d).filter(|&i| k[i] != 0).collect();
            for mask in 0u64..(1u64 << nonzero.len()) {
                let mut signed = k.clone();
                for (bit, &i) in nonzero.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        signed[i] = -signed[i];
                    }
                }
                out.push(LatticePoint { k: signed, budget });
            }
        });
        Ok(out)
    }

    /// Achieved budgets in the window with their multiplicities, ascending,
    /// keeping only the smallest `cap` distinct values. `lo = None` includes the origin.
    pub(crate) fn shell_counts(
        &self,
        lo: Option<f64>,
        hi: f64,
        cap: usize,
    ) -> (Vec<ShellCount>, bool) {
        let cap = cap.max(1);
        let mut buf: Vec<ShellCount> = Vec::new();
        let mut cutoff = f64::INFINITY;
        let mut truncated = false;
        let compact = |buf: &mut Vec<ShellCount>, cutoff: &mut f64, truncated: &mut bool| {
            buf.sort_by(|a, b| a.budget.total_cmp(&b.budget));
            buf.dedup_by(|next, kept| {
                if next.budget == kept.budget {
                    kept.multiplicity += next.multiplicity;
                    true
                } else {
                    false
                }
            });
            if buf.len() > cap {
                buf.truncate(cap);
                *truncated = true;
                *cutoff = buf[cap - 1].budget;
            }
        };
        let flush_at = cap.saturating_mul(4).max(1 << 16);
        self.walk(lo, hi, |rep, budget| {
            if budget > cutoff {
                truncated = true;
                return;
            }
            let nonzero = rep.iter().filter(|&&v| v != 0).count() as u32;
            buf.push(ShellCount {
                budget,
                multiplicity: 1u128 << nonzero,
            });
            if buf.len() >= flush_at {
                compact(&mut buf, &mut cutoff, &mut truncated);
            }
        });
        compact(&mut buf, &mut cutoff, &mut truncated);
        (buf, truncated)
    }

    /// Sorted distinct budgets attained in `(lo, hi]`, at most `cap` of them.
    pub fn achieved_budgets(&self, lo: f64, hi: f64, cap: usize) -> Result<AchievedBudgets> {
        check_window(lo, hi)?;
        let (shells, truncated) = self.shell_counts(Some(lo), hi, cap);
        Ok(AchievedBudgets {
            budgets: shells.into_iter().map(|s| s.budget).collect(),
            truncated,
        })
    }
}

/// `S(k)` for `profile`; see [`Lattice::budget`].
pub fn budget(k: &[i64], profile: &SmoothnessProfile) -> Result<f64> {
    Lattice::new(profile).budget(k)
}

/// Exact count of `{k : S(k) <= t}` (or `< t` when `strict`).
pub fn count_lattice(profile: &SmoothnessProfile, t: f64, strict: bool) -> Result<CountResult> {
    Lattice::new(profile).count(t, strict)
}

pub fn enumerate_shell(profile: &SmoothnessProfile, lo: f64, hi: f64) -> Result<Vec<LatticePoint>> {
    Lattice::new(profile).enumerate_shell(lo, hi)
}

pub fn achieved_budgets(
    profile: &SmoothnessProfile,
    lo: f64,
    hi: f64,
    cap: usize,
) -> Result<AchievedBudgets> {
    Lattice::new(profile).achieved_budgets(lo, hi, cap)
}
