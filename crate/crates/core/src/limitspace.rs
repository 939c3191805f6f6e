//! The limit space `W_2^∞(T^d)`: trigonometric polynomials with frequencies in
//! `{-1, 0, 1}^d`, so `a_n = (1 + m)^{-1/2}` on the shell of points with
//! exactly `m` nonzero entries, and `a_n = 0` past `n = 3^d`.
//!
//! Logarithms in this module are base 2.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::bigmath::log2_biguint;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitShell {
    pub m: u32,
    /// `D(m, d) = 2^m binom(d, m)`, points with exactly `m` nonzero entries.
    pub shell_size: BigUint,
    /// `C(m, d) = Σ_{j <= m} D(j, d)`.
    pub cumulative: BigUint,
}

impl LimitShell {
    /// `(1 + m)^{-1/2}`.
    pub fn value(&self) -> f64 {
        limit_weight(self.m)
    }
}

pub fn limit_weight(m: u32) -> f64 {
    (1.0 + m as f64).powf(-0.5)
}

fn check_dim(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::OutOfRange {
            what: "dimension",
            detail: "d must be at least 1".into(),
        });
    }
    Ok(())
}

/// `3^d`, the dimension of the limit space.
pub fn limit_dimension(d: u32) -> BigUint {
    BigUint::from(3u32).pow(d)
}

/// `D(m, d)` and `C(m, d)`.
pub fn limit_count(d: u32, m: u32) -> Result<LimitShell> {
    check_dim(d)?;
    if m > d {
        return Err(Error::OutOfRange {
            what: "shell index",
            detail: format!("m = {m} exceeds d = {d}"),
        });
    }
    // D(j+1) = D(j) * 2 (d - j) / (j + 1)
    let mut shell = BigUint::one();
    let mut cumulative = BigUint::one();
    for j in 0..m {
        shell = shell * (2 * (d - j)) / (j + 1);
        cumulative += &shell;
    }
    Ok(LimitShell {
        m,
        shell_size: shell,
        cumulative,
    })
}

/// Smallest `m` with `C(m, d) >= n`, or `None` when `n > 3^d`.
pub fn limit_shell_index(d: u32, n: &BigUint) -> Result<Option<u32>> {
    check_dim(d)?;
    if n > &limit_dimension(d) {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0u32, d);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if &limit_count(d, mid)?.cumulative >= n {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(lo))
}

/// `a_n(I_d : W_2^∞(T^d) -> L_2(T^d))`.
pub fn limit_approx_number(d: u32, n: &BigUint) -> Result<f64> {
    if n < &BigUint::one() {
        return Err(Error::IndexTooSmall {
            min: 1,
            got: n.to_string(),
        });
    }
    Ok(limit_shell_index(d, n)?.map_or(0.0, limit_weight))
}

/// Bounds on the shell index `m` of rank `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellIndexBracket {
    pub lower: f64,
    pub upper: f64,
    /// True when `3 <= m < d/2` and the logarithmic bounds apply; otherwise
    /// the bracket is `[0, d]`.
    pub logarithmic: bool,
}

/// For `C(2, d) < n <= 3^d`: `m >= log n / (2 log(4ed / log n))` and
/// `m <= log n / log(2d / log n) + 1`, valid while `3 <= m < d/2`.
pub fn limit_preasymptotic_bracket(d: u32, n: &BigUint) -> Result<ShellIndexBracket> {
    check_dim(d)?;
    let c2 = limit_count(d, 2.min(d))?.cumulative;
    if n <= &c2 || n > &limit_dimension(d) {
        return Err(Error::OutOfRange {
            what: "rank",
            detail: format!("n = {n} must satisfy C(2, d) = {c2} < n <= 3^{d}"),
        });
    }
    let m = limit_shell_index(d, n)?.expect("n <= 3^d");
    if !(m >= 3 && 2 * m < d) {
        return Ok(ShellIndexBracket {
            lower: 0.0,
            upper: d as f64,
            logarithmic: false,
        });
    }
    let log_n = log2_biguint(n);
    let df = d as f64;
    let lower = log_n / (2.0 * (4.0 * std::f64::consts::E * df / log_n).log2());
    let upper = log_n / (2.0 * df / log_n).log2() + 1.0;
    Ok(ShellIndexBracket {
        lower,
        upper,
        logarithmic: true,
    })
}
