//! Brute-force references for cross-validation. They scan explicit boxes of
//! `Z^d` and share no code with the counting routines they check.
//!
//! Boxes are per-coordinate half-widths `b_j` (a single entry applies to every
//! coordinate); a mixed profile needs very different widths per axis.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::profile::SmoothnessProfile;

/// Largest number of points any oracle scans.
pub const MAX_SCAN: u128 = 100_000_000;

/// Largest dimension of the full limit-space scan.
pub const MAX_LIMIT_DIM: u32 = 7;

#[derive(PartialEq)]
struct Budget(f64);

impl Eq for Budget {}

impl PartialOrd for Budget {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Budget {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

fn resolve_box(profile: &SmoothnessProfile, bounds: &[u64]) -> Result<Vec<u64>> {
    let d = profile.dim();
    let widths = match bounds.len() {
        1 => vec![bounds[0]; d],
        n if n == d => bounds.to_vec(),
        n => return Err(Error::DimensionMismatch { expected: d, got: n }),
    };
    let points = widths
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(2 * b as u128 + 1))
        .unwrap_or(u128::MAX);
    if points > MAX_SCAN {
        return Err(Error::SizeGuard(format!(
            "box {widths:?} holds {points} points, above the oracle limit {MAX_SCAN}"
        )));
    }
    Ok(widths)
}

/// `|k|^{2r}` for `k = 0..=b`.
fn power_table(r: f64, b: u64) -> Vec<f64> {
    (0..=b).map(|k| (k as f64).powf(2.0 * r)).collect()
}

/// `|k|^{2r}` in integers when every `2r` is integral and `Σ_j b_j^{2r_j}` fits.
fn integer_tables(profile: &SmoothnessProfile, widths: &[u64]) -> Option<Vec<Vec<u128>>> {
    let mut worst = 0u128;
    let mut tables = Vec::with_capacity(widths.len());
    for (&r, &b) in profile.exponents().iter().zip(widths) {
        let e = 2.0 * r;
        if e.fract() != 0.0 || e > 127.0 {
            return None;
        }
        let table = (0..=b as u128)
            .map(|k| k.checked_pow(e as u32))
            .collect::<Option<Vec<u128>>>()?;
        worst = worst.checked_add(*table.last().expect("nonempty"))?;
        tables.push(table);
    }
    Some(tables)
}

enum Tables {
    Int(Vec<Vec<u128>>),
    Real(Vec<Vec<f64>>),
}

impl Tables {
    fn new(profile: &SmoothnessProfile, widths: &[u64]) -> Self {
        match integer_tables(profile, widths) {
            Some(t) => Tables::Int(t),
            None => Tables::Real(
                profile
                    .exponents()
                    .iter()
                    .zip(widths)
                    .map(|(&r, &b)| power_table(r, b))
                    .collect(),
            ),
        }
    }
}

/// Visits every `k` in the box as `(S(k), point count)`, folding signs into the count.
fn scan<T, F>(tables: &[Vec<T>], zero: T, mut visit: F)
where
    T: Copy + std::ops::Add<Output = T>,
    F: FnMut(T, u64),
{
    let d = tables.len();
    let mut idx = vec![0usize; d];
    loop {
        let mut s = zero;
        let mut mult = 1u64;
        for (j, &i) in idx.iter().enumerate() {
            s = s + tables[j][i];
            if i != 0 {
                mult *= 2;
            }
        }
        visit(s, mult);
        let mut j = 0;
        loop {
            if j == d {
                return;
            }
            idx[j] += 1;
            if idx[j] < tables[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Smallest widths whose complement has every budget at least `s`.
fn widths_for(profile: &SmoothnessProfile, s: f64) -> Vec<u64> {
    profile
        .exponents()
        .iter()
        .map(|&r| {
            let mut b = s.powf(0.5 / r).ceil() as u64;
            while b > 0 && ((b as f64).powf(2.0 * r)) >= s {
                b -= 1;
            }
            while ((b + 1) as f64).powf(2.0 * r) < s {
                b += 1;
            }
            b
        })
        .collect()
}

/// Smallest budget attained outside the box.
fn outside_min(profile: &SmoothnessProfile, widths: &[u64]) -> f64 {
    profile
        .exponents()
        .iter()
        .zip(widths)
        .map(|(&r, &b)| ((b + 1) as f64).powf(2.0 * r))
        .fold(f64::INFINITY, f64::min)
}

/// The `n_max` smallest budgets `S(k)` with multiplicity, ascending.
pub fn brute_budgets(profile: &SmoothnessProfile, n_max: usize, bounds: &[u64]) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Err(Error::IndexTooSmall { min: 1, got: "0".into() });
    }
    let widths = resolve_box(profile, bounds)?;
    let mut heap: BinaryHeap<Budget> = BinaryHeap::with_capacity(n_max + 1);
    let mut offer = |s: f64, mult: u64| {
        for _ in 0..mult {
            if heap.len() < n_max {
                heap.push(Budget(s));
            } else if s < heap.peek().expect("nonempty").0 {
                heap.pop();
                heap.push(Budget(s));
            } else {
                break;
            }
        }
    };
    match Tables::new(profile, &widths) {
        Tables::Int(t) => scan(&t, 0u128, |s, m| offer(s as f64, m)),
        Tables::Real(t) => scan(&t, 0.0, offer),
    }
    let budgets: Vec<f64> = heap.into_sorted_vec().into_iter().map(|b| b.0).collect();
    // A tie with the outside only repeats values already listed.
    let last = budgets.last().copied().unwrap_or(f64::INFINITY);
    if budgets.len() < n_max || last > outside_min(profile, &widths) {
        let target = if budgets.len() < n_max { f64::INFINITY } else { last };
        let suggested = if target.is_finite() {
            widths_for(profile, target)
        } else {
            widths.iter().map(|b| 2 * b + 1).collect()
        };
        return Err(Error::InsufficientBox { suggested });
    }
    Ok(budgets)
}

/// The first `n_max` approximation numbers from a full box scan.
pub fn brute_spectrum(profile: &SmoothnessProfile, n_max: usize, bounds: &[u64]) -> Result<Vec<f64>> {
    Ok(brute_budgets(profile, n_max, bounds)?
        .into_iter()
        .map(|s| (1.0 + s).powf(-0.5))
        .collect())
}

/// [`brute_budgets`] on the boxes `{k : |k_j|^{2R_j} <= s}`, raising `s`
/// until the sufficiency check passes. Each step grows the box by about half.
pub fn brute_budgets_auto(profile: &SmoothnessProfile, n_max: usize) -> Result<Vec<f64>> {
    let sigma: f64 = profile.exponents().iter().map(|r| 0.5 / r).sum();
    let growth = 1.5f64.powf(1.0 / sigma);
    let mut s = 1.0;
    loop {
        match brute_budgets(profile, n_max, &count_box(profile, s)) {
            Err(Error::InsufficientBox { .. }) => s *= growth,
            other => return other,
        }
    }
}

/// Widths that contain every `k` with `S(k) <= t`.
pub fn count_box(profile: &SmoothnessProfile, t: f64) -> Vec<u64> {
    profile
        .exponents()
        .iter()
        .map(|&r| {
            let mut b = t.max(0.0).powf(0.5 / r).floor() as u64;
            while b > 0 && (b as f64).powf(2.0 * r) > t {
                b -= 1;
            }
            while ((b + 1) as f64).powf(2.0 * r) <= t {
                b += 1;
            }
            b
        })
        .collect()
}

/// `#{k in the box : S(k) <= t}` (`< t` when `strict`), after checking that
/// nothing outside the box qualifies.
pub fn brute_count(profile: &SmoothnessProfile, t: f64, strict: bool, bounds: &[u64]) -> Result<u64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidBudget(t));
    }
    let widths = resolve_box(profile, bounds)?;
    let outside = outside_min(profile, &widths);
    if outside < t || (!strict && outside == t) {
        return Err(Error::InsufficientBox {
            suggested: count_box(profile, t),
        });
    }
    let mut n = 0u64;
    match Tables::new(profile, &widths) {
        Tables::Int(tables) => {
            // S(k) integral: S <= floor(t), or S < ceil(t) when strict
            let limit = if strict { t.ceil() as u128 } else { t.floor() as u128 + 1 };
            scan(&tables, 0u128, |s, mult| {
                if s < limit {
                    n += mult;
                }
            });
        }
        Tables::Real(tables) => scan(&tables, 0.0, |s, mult| {
            if s < t || (!strict && s == t) {
                n += mult;
            }
        }),
    }
    Ok(n)
}

/// All `3^d` limit-space weights `(1 + Σ|k_j|)^{-1/2}`, `k ∈ {-1,0,1}^d`, descending.
pub fn brute_limit_spectrum(d: u32) -> Result<Vec<f64>> {
    if d == 0 || d > MAX_LIMIT_DIM {
        return Err(Error::SizeGuard(format!(
            "limit-space scan needs 1 <= d <= {MAX_LIMIT_DIM}, got {d}"
        )));
    }
    let total = 3usize.pow(d);
    let mut out: Vec<f64> = (0..total)
        .map(|code| {
            // base-3 digits 0, 1, 2 stand for k_j = 0, 1, -1
            let mut c = code;
            let mut norm = 0.0f64;
            for _ in 0..d {
                if c % 3 != 0 {
                    norm += 1.0;
                }
                c /= 3;
            }
            (1.0 + norm).powf(-0.5)
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}
