//! Exact combinatorial numbers: Bernoulli numbers, unsigned Stirling numbers
//! of the first kind and double factorials, plus the floating-point
//! Pochhammer symbol.
//!
//! Stirling numbers are stored unsigned: `c(n, k)` is the coefficient of
//! `z^k` in the rising factorial `(z)_n = z (z + 1) ... (z + n - 1)`. The
//! signed numbers `s(n, k)` of the falling-factorial convention are
//! `(-1)^(n - k) c(n, k)`, so `(z)_n = sum_k (-1)^(n - k) s(n, k) z^k`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

static BERNOULLI_CACHE: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Built from `sum_{k=0}^{n} C(n+1, k) B_k = 0`; earlier values are memoised.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n {
        let m = cache.len();
        if m == 0 {
            cache.push(BigRational::one());
            continue;
        }
        if m > 1 && m % 2 == 1 {
            cache.push(BigRational::zero());
            continue;
        }
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let value = -acc / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(value);
    }
    cache[n].clone()
}

/// Row `n` of the unsigned Stirling numbers of the first kind, `c(n, 0..=n)`.
pub fn stirling_first_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        // (z)_{m+1} = (z)_m * (z + m)
        let mut next = vec![BigInt::zero(); m + 2];
        for (k, c) in row.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * BigInt::from(m);
        }
        row = next;
    }
    row
}

/// Unsigned Stirling number of the first kind `c(n, k) = |s(n, k)|`.
pub fn stirling_first_unsigned(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::domain(
            "stirling_first_unsigned",
            format!("k = {k} exceeds n = {n}"),
        ));
    }
    Ok(stirling_first_row(n).swap_remove(k))
}

/// Double factorial `n!!` for `n >= -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::domain(
            "double_factorial",
            format!("n = {n} is below -1"),
        ));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// Exact factorial.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!` as a float.
pub fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Pochhammer symbol `(a)_n = a (a + 1) ... (a + n - 1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// Exact Pochhammer symbol over the rationals.
pub fn pochhammer_exact(a: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// Converts an exact rational to the nearest-ish `f64` via scaled integer division.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    // Shift so the integer quotient carries ~64 significant bits.
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        (num >> (-shift) as usize) / den
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}
