//! Exact integer helpers shared by the counting and bounds code.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C(a, b)`, taken as zero whenever `b < 0`, `a < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

pub fn binomial_signed(a: i64, b: i64) -> BigInt {
    BigInt::from(binomial(a, b))
}

/// Natural logarithm of a big integer, accurate to `f64` precision even when
/// the value exceeds the `f64` range.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("value fits f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
