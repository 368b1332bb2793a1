//! Hermite-weighted theta series.
//!
//! * `f_n(x) = (8 pi)^{-n/2} H_n(sqrt(2 pi) x) exp(-pi x^2)`
//! * `psi_j(x) = sum_{n >= 1} f_{2j}(n sqrt(x))`, so that the full theta
//!   function is `theta_j(x) = 2 psi_j(x) + f_{2j}(0)`
//! * `omega_{n,ell}(t) = sum_{m >= 1} m^ell H_n(sqrt(2 pi t) m) exp(-pi m^2 t)`
//!
//! All series are truncated against a rigorous tail bound. With
//! `r = sqrt(2 pi |x|)` the m-th term is at most
//! `b_m = m^ell scale^d E_d(r m) exp(-pi m^2 Re x)`, where `E_d` is the
//! absolute-coefficient envelope of `H_d`. Consecutive ratios satisfy
//! `b_{m+1} / b_m <= ((m+1)/m)^{d+ell} exp(-pi (2m+1) Re x)`, which decreases
//! in `m`, so once it drops below one the remaining tail is bounded by a
//! geometric series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{is_finite, real, sign_pow, CompensatedSum};
use crate::special::{double_factorial, hermite_envelope, hermite_scaled, rational_to_f64};

/// Truncation policy for the theta series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    tail_tol: f64,
    max_terms: usize,
}

impl SeriesControl {
    pub const DEFAULT_TAIL_TOL: f64 = 1e-14;
    pub const DEFAULT_MAX_TERMS: usize = 10_000;

    pub fn new(tail_tol: f64, max_terms: usize) -> Result<Self> {
        if !(tail_tol > 0.0) || !tail_tol.is_finite() {
            return Err(Error::domain(
                "SeriesControl",
                format!("tail_tol = {tail_tol} must be positive"),
            ));
        }
        if max_terms == 0 {
            return Err(Error::domain("SeriesControl", "max_terms must be at least 1"));
        }
        Ok(Self {
            tail_tol,
            max_terms,
        })
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            tail_tol: Self::DEFAULT_TAIL_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

/// A point of the open right half-plane `|arg x| < pi/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaArgument(Complex64);

impl ThetaArgument {
    pub fn new(x: Complex64) -> Result<Self> {
        if !is_finite(x) || !(x.re > 0.0) {
            return Err(Error::domain(
                "ThetaArgument",
                format!("x = {x} lies outside the right half-plane"),
            ));
        }
        Ok(Self(x))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(real(x))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn inverse(&self) -> Self {
        // 1/x stays in the right half-plane
        Self(self.0.inv())
    }
}

/// Truncated series value with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Index of the last term included.
    pub terms: usize,
    /// Rigorous bound on the neglected tail.
    pub tail_bound: f64,
}

/// `exp(-pi n^2 x)` with the phase `pi n^2 Im x` formed exactly and reduced
/// modulo `2 pi` before the trig calls.
fn gaussian(n: f64, x: Complex64) -> Complex64 {
    let n2 = n * n;
    let hi = n2 * x.im;
    let lo = n2.mul_add(x.im, -hi);
    let turns = (hi - 2.0 * (hi / 2.0).round()) + lo;
    let (sin, cos) = (-PI * turns).sin_cos();
    (-PI * n2 * x.re).exp() * Complex64::new(cos, sin)
}

fn psi_scale() -> f64 {
    (8.0 * PI).sqrt().recip()
}

/// Majorant `b_m` of the m-th term magnitude.
fn term_majorant(degree: usize, ell: u32, scale: f64, x: Complex64, m: f64) -> f64 {
    let r = (2.0 * PI * x.norm()).sqrt();
    m.powi(ell as i32) * scale.powi(degree as i32) * hermite_envelope(degree, r * m)
        * (-PI * m * m * x.re).exp()
}

/// Bound on `sum_{m > last} b_m`, or infinity while the ratio test fails.
pub(crate) fn tail_bound(degree: usize, ell: u32, scale: f64, x: Complex64, last: usize) -> f64 {
    let m = (last + 1) as f64;
    let growth = ((m + 1.0) / m).powi((degree as u32 + ell) as i32);
    let ratio = growth * (-PI * (2.0 * m + 1.0) * x.re).exp();
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    term_majorant(degree, ell, scale, x, m) / (1.0 - ratio)
}

/// Upper bound on `|psi_j(x)|`, usable wherever the ratio test already
/// holds at the first term (in particular for `Re x >= 1`).
pub fn psi_j_magnitude_bound(j: u32, x: Complex64) -> f64 {
    tail_bound(2 * j as usize, 0, psi_scale(), x, 0)
}

fn lattice_sum<F>(degree: usize, ell: u32, scale: f64, x: Complex64, ctl: &SeriesControl, mut term: F) -> Result<SeriesSum>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    let mut acc = CompensatedSum::new();
    let mut last_bound = f64::INFINITY;
    for m in 1..=ctl.max_terms {
        acc.add(term(m)?);
        last_bound = tail_bound(degree, ell, scale, x, m);
        if last_bound < ctl.tail_tol {
            return Ok(SeriesSum {
                value: acc.value(),
                terms: m,
                tail_bound: last_bound,
            });
        }
    }
    Err(Error::Convergence {
        terms: ctl.max_terms,
        tail_bound: last_bound,
        tolerance: ctl.tail_tol,
    })
}

/// `f_n(x) = (8 pi)^{-n/2} H_n(sqrt(2 pi) x) exp(-pi x^2)`.
pub fn f_n(n: u32, x: Complex64) -> Result<Complex64> {
    let h = hermite_scaled(n as usize, (2.0 * PI).sqrt() * x, psi_scale())?;
    let v = h * (-PI * x * x).exp();
    if !is_finite(v) {
        return Err(Error::Overflow {
            function: "f_n",
            at: x,
        });
    }
    Ok(v)
}

/// Closed form `f_{2j}(0) = (-1)^j (4 pi)^{-j} (2j - 1)!!`.
pub fn f_even_at_zero(j: u32) -> f64 {
    let dfact = double_factorial(2 * j as i64 - 1).expect("2j - 1 >= -1");
    let dfact = rational_to_f64(&num_rational::BigRational::from_integer(dfact));
    sign_pow(j as usize) * (4.0 * PI).powi(-(j as i32)) * dfact
}

/// `omega_{n,ell}(t)` for even `n`.
///
/// Even `n` makes `H_n(sqrt(2 pi t) m)` a polynomial in `t`, so the value
/// does not depend on the branch of the square root.
pub fn omega(n: u32, ell: u32, t: Complex64, ctl: &SeriesControl) -> Result<SeriesSum> {
    if n % 2 == 1 {
        return Err(Error::domain("omega", format!("n = {n} must be even")));
    }
    if !is_finite(t) || !(t.re > 0.0) {
        return Err(Error::domain("omega", format!("Re t must be positive, t = {t}")));
    }
    let root = (2.0 * PI * t).sqrt();
    lattice_sum(n as usize, ell, 1.0, t, ctl, |m| {
        let mf = m as f64;
        let h = hermite_scaled(n as usize, root * mf, 1.0)?;
        Ok(h * mf.powi(ell as i32) * gaussian(mf, t))
    })
}

/// `psi_j(x) = sum_{n >= 1} f_{2j}(n sqrt(x))` with the principal square root.
pub fn psi_j(j: u32, x: ThetaArgument, ctl: &SeriesControl) -> Result<SeriesSum> {
    let x = x.value();
    let degree = 2 * j as usize;
    let root = (2.0 * PI * x).sqrt();
    lattice_sum(degree, 0, psi_scale(), x, ctl, |n| {
        let nf = n as f64;
        let h = hermite_scaled(degree, root * nf, psi_scale())?;
        Ok(h * gaussian(nf, x))
    })
}

/// `theta_j(x) = sum_{n in Z} f_{2j}(n sqrt(x))`, summed symmetrically
/// from `-N` to `N` through [`f_n`].
pub fn theta_symmetric(j: u32, x: ThetaArgument, ctl: &SeriesControl) -> Result<SeriesSum> {
    let x = x.value();
    let degree = 2 * j as usize;
    let root = x.sqrt();
    let mut last = None;
    for m in 1..=ctl.max_terms {
        if 2.0 * tail_bound(degree, 0, psi_scale(), x, m) < ctl.tail_tol {
            last = Some(m);
            break;
        }
    }
    let Some(last) = last else {
        return Err(Error::Convergence {
            terms: ctl.max_terms,
            tail_bound: 2.0 * tail_bound(degree, 0, psi_scale(), x, ctl.max_terms),
            tolerance: ctl.tail_tol,
        });
    };
    let mut acc = CompensatedSum::new();
    let n = last as i64;
    for k in -n..=n {
        acc.add(f_n(2 * j, root * k as f64)?);
    }
    Ok(SeriesSum {
        value: acc.value(),
        terms: last,
        tail_bound: 2.0 * tail_bound(degree, 0, psi_scale(), x, last),
    })
}

/// `|psi_j(x) - [(-1)^j x^{-1/2} psi_j(1/x) + ((-1)^j x^{-1/2} - 1) f_{2j}(0) / 2]|`.
pub fn lemma1_residual(j: u32, x: ThetaArgument, ctl: &SeriesControl) -> Result<f64> {
    let lhs = psi_j(j, x, ctl)?.value;
    let inv = psi_j(j, x.inverse(), ctl)?.value;
    let sign = sign_pow(j as usize);
    let root_inv = x.value().sqrt().inv();
    let rhs = sign * root_inv * inv + 0.5 * (sign * root_inv - 1.0) * f_even_at_zero(j);
    Ok((lhs - rhs).norm())
}

/// `psi_j(x)` computed directly and recombined from its odd/even split
/// around `x = i`:
///
/// ```text
/// (8 pi)^{-j} [ -sum_{n odd} H_{2j}(sqrt(2 pi x) n) e^{-pi n^2 (x - i)}
///               + sum_{k >= 1} H_{2j}(sqrt(2 pi x) 2k) e^{-4 pi k^2 (x - i)} ]
/// ```
pub fn near_i_decomposition(
    j: u32,
    x: ThetaArgument,
    ctl: &SeriesControl,
) -> Result<(Complex64, Complex64)> {
    let direct = psi_j(j, x, ctl)?.value;
    let xv = x.value();
    let shifted = xv - Complex64::i();
    let degree = 2 * j as usize;
    let root = (2.0 * PI * xv).sqrt();
    let scale = psi_scale();

    let odd = lattice_sum(degree, 0, scale, xv, ctl, |k| {
        let n = (2 * k - 1) as f64;
        let h = hermite_scaled(degree, root * n, scale)?;
        Ok(h * gaussian(n, shifted))
    })?;
    let even = lattice_sum(degree, 0, scale, xv, ctl, |k| {
        let n = (2 * k) as f64;
        let h = hermite_scaled(degree, root * n, scale)?;
        Ok(h * gaussian(n, shifted))
    })?;
    Ok((direct, even.value - odd.value))
}
