//! Physicists' Hermite polynomials by three-term recurrence.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `H_n(x)` via `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    if !cur.is_finite() {
        return Err(Error::Overflow {
            function: "hermite",
            at: Complex64::new(x, 0.0),
        });
    }
    Ok(cur)
}

/// `scale^n H_n(y)` for complex `y`, using the recurrence on the scaled
/// values so that large `n` does not overflow before the scale is applied.
pub fn hermite_scaled(n: usize, y: Complex64, scale: f64) -> Result<Complex64> {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(prev);
    }
    let two_y = 2.0 * scale * y;
    let scale2 = scale * scale;
    let mut cur = two_y;
    for k in 1..n {
        let next = two_y * cur - 2.0 * k as f64 * scale2 * prev;
        prev = cur;
        cur = next;
    }
    if !(cur.re.is_finite() && cur.im.is_finite()) {
        return Err(Error::Overflow {
            function: "hermite_scaled",
            at: y,
        });
    }
    Ok(cur)
}

/// `H_n(y)` for complex `y`.
pub fn hermite_complex(n: usize, y: Complex64) -> Result<Complex64> {
    hermite_scaled(n, y, 1.0)
}

/// Upper envelope `sum_k |a_k| r^k` of `H_n` on the disc `|y| <= r`.
///
/// The coefficients of `H_n` alternate in sign in steps of `y^2`, so the
/// envelope is `i^{-n} H_n(i r)`, which satisfies the recurrence
/// `E_{n+1} = 2r E_n + 2n E_{n-1}`.
pub fn hermite_envelope(n: usize, r: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * r;
    for k in 1..n {
        let next = 2.0 * r * cur + 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}
