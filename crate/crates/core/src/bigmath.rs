//! Logarithms of arbitrary-precision integers without going through `f64`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// `ln n`, `-inf` for zero. Uses the top 64 bits plus the bit length.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_u64().expect("fits in 64 bits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("top 64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log2 n`, `-inf` for zero.
pub fn log2_biguint(n: &BigUint) -> f64 {
    ln_biguint(n) / std::f64::consts::LN_2
}
