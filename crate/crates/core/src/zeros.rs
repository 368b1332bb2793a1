//! Zeros of `P_q` on the critical line `Re s = 1/2`, and of `xi` there.
//!
//! From `P_q(s) = (-1)^q P_q(1 - s)`, `P_q(1/2 + it)` is real for even `q`
//! and purely imaginary for odd `q`, so its zeros are sign changes of a real
//! function of `t`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result, Warning};
use crate::hyper::{p_q_coefficients, p_q_scaled, precision_warning, MAX_RELIABLE_DEGREE};
use crate::special::rational_to_f64;
use crate::xi::xi_critical_line;

pub const DEFAULT_GRID_STEP: f64 = 0.01;
pub const BRACKET_WIDTH: f64 = 1e-12;
pub const RESIDUAL_FACTOR: f64 = 1e-10;
const TANGENT_LEVEL: f64 = 1e-13;

fn critical_point(t: f64) -> Complex64 {
    Complex64::new(0.5, t)
}

/// `Re P_q(1/2 + it)` for even `q`, `Im P_q(1/2 + it)` for odd `q`.
pub fn critical_line_section(q: u32, t: f64) -> Result<f64> {
    let v = p_q_scaled(q, critical_point(t))?.value;
    Ok(if q % 2 == 0 { v.re } else { v.im })
}

/// A refined zero `1/2 + it` of `P_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub q: u32,
    pub t: f64,
    /// `|P_q(1/2 + it)|` at the refined point.
    pub residual: f64,
    pub bracket_width: f64,
    /// Sum of term magnitudes in the series for `P_q` at the point.
    pub scale: f64,
}

impl ZeroRecord {
    pub fn residual_ok(&self) -> bool {
        self.residual <= RESIDUAL_FACTOR * self.scale
    }
}

/// Bisects a sign change of `f` on `[lo, hi]` down to `width`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, width: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok((mid, mid));
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Brackets `[a, b]` (or points, when `a == b`) where `f` changes sign on
/// the grid `lo, lo + step, ..., hi`. Adjacent grid values that are both
/// below `tangent_level(t)` in magnitude are rescanned ten times finer.
fn scan_brackets<F, L>(f: &mut F, lo: f64, hi: f64, step: f64, tangent_level: &L, depth: u32) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
    L: Fn(f64) -> f64,
{
    let n = ((hi - lo) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| (lo + k as f64 * step).min(hi)).collect();
    let values = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for k in 0..n {
        let (a, b) = (grid[k], grid[k + 1]);
        let (fa, fb) = (values[k], values[k + 1]);
        if fa == 0.0 {
            out.push((a, a));
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            out.push((a, b));
        } else if depth < 2 && fa.abs() < tangent_level(a) && fb.abs() < tangent_level(b) {
            let inner = scan_brackets(f, a, b, step / 10.0, tangent_level, depth + 1)?;
            out.extend(inner.into_iter().filter(|&(x, _)| x != a && x != b));
        }
    }
    if values[n] == 0.0 {
        out.push((grid[n], grid[n]));
    }
    out.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);
    Ok(out)
}

/// Zeros of a real function on `[lo, hi]`, refined by bisection.
pub fn sign_change_zeros<F>(mut f: F, lo: f64, hi: f64, step: f64) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(step > 0.0) || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("sign_change_zeros", format!("bad range {lo}:{hi}:{step}")));
    }
    let brackets = scan_brackets(&mut f, lo, hi, step, &|_| 0.0, 0)?;
    brackets
        .into_iter()
        .map(|(a, b)| if a == b { Ok((a, b)) } else { bisect(&mut f, a, b, BRACKET_WIDTH) })
        .collect()
}

fn count_with_mirrors(zeros: &[ZeroRecord]) -> usize {
    zeros.iter().map(|z| if z.t == 0.0 { 1 } else { 2 }).sum()
}

fn scan_once(q: u32, t_max: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    let mut section = |t: f64| critical_line_section(q, t);
    let level = |t: f64| TANGENT_LEVEL * p_q_scaled(q, critical_point(t)).map(|v| v.scale).unwrap_or(0.0);
    // start below zero so that a zero at t = 0 is bracketed symmetrically
    let brackets = scan_brackets(&mut section, -step, t_max, step, &level, 0)?;
    let mut out = Vec::new();
    for (a, b) in brackets {
        let (lo, hi) = if a == b { (a, b) } else { bisect(&mut section, a, b, BRACKET_WIDTH)? };
        if hi < 0.0 {
            continue;
        }
        // the section is odd in t for odd q, so a bracket around the origin
        // holds the zero t = 0
        let t = if q % 2 == 1 && lo <= 0.0 { 0.0 } else { 0.5 * (lo + hi) };
        if t < 0.0 {
            continue;
        }
        let v = p_q_scaled(q, critical_point(t))?;
        out.push(ZeroRecord {
            q,
            t,
            residual: v.value.norm(),
            bracket_width: hi - lo,
            scale: v.scale,
        });
    }
    out.sort_by(|x, y| x.t.total_cmp(&y.t));
    out.dedup_by(|x, y| (x.t - y.t).abs() <= BRACKET_WIDTH);
    Ok(out)
}

/// Critical-line zeros of `P_q` with `t >= 0`; negative ordinates follow by
/// symmetry. Retries once at a tenth of the step when the count (mirrors
/// included) differs from `q`.
pub fn find_zeros(q: u32, t_max: f64, grid_step: f64) -> Result<Vec<ZeroRecord>> {
    if !(grid_step > 0.0) || !grid_step.is_finite() || !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::domain(
            "find_zeros",
            format!("need t_max > 0 and grid_step > 0, got {t_max} and {grid_step}"),
        ));
    }
    if q == 0 {
        return Ok(Vec::new());
    }
    let expected = q as usize;
    let first = scan_once(q, t_max, grid_step)?;
    if count_with_mirrors(&first) == expected {
        return Ok(first);
    }
    let second = scan_once(q, t_max, grid_step / 10.0)?;
    let found = count_with_mirrors(&second);
    if found == expected {
        Ok(second)
    } else {
        Err(Error::CountMismatch { q, found, expected })
    }
}

/// Fujiwara's bound on the roots of `P_q(1/2 + w)` as a polynomial in `w`.
pub fn root_bound(q: u32) -> f64 {
    if q == 0 {
        return 0.0;
    }
    // shift s = w + 1/2 with exact arithmetic
    let coeffs = p_q_coefficients(q);
    let n = coeffs.len() - 1;
    let half = BigRational::new(1.into(), 2.into());
    let mut shifted = vec![BigRational::zero(); n + 1];
    for (k, c) in coeffs.iter().enumerate() {
        // c (w + 1/2)^k
        let mut binom = BigRational::from_integer(1.into());
        for i in 0..=k {
            let term = c * &binom * num_traits::pow(half.clone(), k - i);
            shifted[i] += term;
            binom = binom * BigRational::from_integer(((k - i) as i64).into())
                / BigRational::from_integer(((i + 1) as i64).into());
        }
    }
    let lead = shifted[n].abs();
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let ratio = rational_to_f64(&(shifted[n - k].abs() / &lead));
        let ratio = if k == n { ratio / 2.0 } else { ratio };
        bound = bound.max(ratio.powf(1.0 / k as f64));
    }
    2.0 * bound
}

/// Scan range that is guaranteed to contain every zero: at least 30, and
/// past the root bound.
pub fn default_t_max(q: u32) -> f64 {
    30f64.max(root_bound(q) + 1.0)
}

/// Outcome of an exhaustive zero count.
#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveReport {
    pub q: u32,
    pub zeros: Vec<ZeroRecord>,
    /// Zero count with mirror images included.
    pub found: usize,
    pub passed: bool,
    /// Smallest gap between distinct ordinates, mirrors included.
    pub min_gap: Option<f64>,
    pub warnings: Vec<Warning>,
    pub failure: Option<Error>,
}

/// Checks that the critical-line zeros of `P_q` number exactly `q`, which
/// leaves none off the line.
pub fn verify_exhaustive(q: u32) -> Result<ExhaustiveReport> {
    if q > MAX_RELIABLE_DEGREE {
        return Err(Error::domain(
            "verify_exhaustive",
            format!("q = {q} exceeds {MAX_RELIABLE_DEGREE}"),
        ));
    }
    let mut warnings: Vec<Warning> = precision_warning(q).into_iter().collect();
    let (zeros, failure) = match find_zeros(q, default_t_max(q), DEFAULT_GRID_STEP) {
        Ok(z) => (z, None),
        Err(e @ Error::CountMismatch { .. }) => (Vec::new(), Some(e)),
        Err(e) => return Err(e),
    };
    let bad: Vec<&ZeroRecord> = zeros.iter().filter(|z| !z.residual_ok()).collect();
    if !bad.is_empty() {
        warnings.push(Warning::Precision {
            q,
            detail: format!("{} zero(s) with residual above {RESIDUAL_FACTOR:e} x scale", bad.len()),
        });
    }
    let mut ordinates: Vec<f64> = zeros.iter().flat_map(|z| [z.t, -z.t]).collect();
    ordinates.sort_by(f64::total_cmp);
    ordinates.dedup();
    let min_gap = ordinates.windows(2).map(|w| w[1] - w[0]).reduce(f64::min);
    let found = match &failure {
        Some(Error::CountMismatch { found, .. }) => *found,
        _ => count_with_mirrors(&zeros),
    };
    Ok(ExhaustiveReport {
        q,
        passed: failure.is_none() && found == q as usize,
        found,
        zeros,
        min_gap,
        warnings,
        failure,
    })
}

/// Ordinates of zeros of `xi(1/2 + it)` in `[t_lo, t_hi]`.
pub fn xi_critical_zeros(t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<f64>> {
    Ok(sign_change_zeros(xi_critical_line, t_lo, t_hi, step)?
        .into_iter()
        .map(|(lo, hi)| 0.5 * (lo + hi))
        .collect())
}
