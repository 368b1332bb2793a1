//! The Riemann xi function and its theta-integral representations.
//!
//! All infinite integrals are split into a quadrature over a finite range of
//! length `ray_cutoff` plus an analytic tail. Near `x = 0` the theta series
//! are replaced by their small-argument expansion after the substitution
//! `x = 1/y`; the remainder there is exponentially small and is estimated
//! from the discrepancy at the cutoff.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyper::p_j;
use crate::numeric::{is_finite, real, sign_pow};
use crate::quadrature::{integrate, QuadratureConfig, QuadratureResult};
use crate::special::{gamma_real, hermite_scaled, ln_gamma};
use crate::theta::{f_even_at_zero, omega, psi_j, psi_j_magnitude_bound, tail_bound, SeriesControl, ThetaArgument};
use crate::zeta::{completed_zeta, zeta_family, zeta_times_s_minus_one};

/// Distance kept from the wedge boundary `|arg b| = pi/2`.
pub const WEDGE_MARGIN: f64 = 0.05;

/// `||b| - 1|` below which `b` counts as lying on the unit circle.
pub const UNIT_CIRCLE_TOLERANCE: f64 = 1e-14;

const SINGULAR_POINT_TOLERANCE: f64 = 1e-12;

/// `xi(s) = s (s - 1) pi^{-s/2} Gamma(s/2) zeta(s) / 2`.
///
/// Always evaluated at whichever of `s`, `1 - s` has real part at least
/// 1/2, through `(s - 1) zeta(s)`, so the poles and zeros of the factors
/// never meet.
pub fn xi_direct(s: Complex64) -> Result<Complex64> {
    if !is_finite(s) {
        return Err(Error::domain("xi_direct", format!("s = {s} is not finite")));
    }
    let w = if s.re >= 0.5 { s } else { 1.0 - s };
    let gamma_part = (ln_gamma(w / 2.0)? - w / 2.0 * PI.ln()).exp();
    let value = 0.5 * w * gamma_part * zeta_times_s_minus_one(w)?;
    if !is_finite(value) {
        return Err(Error::Overflow {
            function: "xi_direct",
            at: s,
        });
    }
    Ok(value)
}

/// `xi(1/2 + it)`, which is real.
pub fn xi_critical_line(t: f64) -> Result<f64> {
    Ok(xi_direct(Complex64::new(0.5, t))?.re)
}

/// `p_j(s) 2 xi(s) / (s (s - 1))`, the common value of the representations.
pub fn xi_target(j: u32, s: Complex64) -> Result<Complex64> {
    check_not_singular("xi_target", s)?;
    Ok(p_j(j, s)? * 2.0 * xi_direct(s)? / (s * (s - 1.0)))
}

/// `p_j(s) pi^{-s/2} Gamma(s/2) zeta(s)`.
pub fn mellin_psi_target(j: u32, s: Complex64) -> Result<Complex64> {
    Ok(p_j(j, s)? * completed_zeta(s)?)
}

/// `pi^{-s/2} Gamma(s/2) zeta_{2q,ell}(s)`.
pub fn mellin_omega_target(q: u32, ell: u32, s: Complex64) -> Result<Complex64> {
    let gamma_part = (ln_gamma(s / 2.0)? - s / 2.0 * PI.ln()).exp();
    Ok(gamma_part * zeta_family(q, ell, s)?)
}

fn check_not_singular(function: &'static str, s: Complex64) -> Result<()> {
    for p in [0.0, 1.0] {
        if (s - p).norm() < SINGULAR_POINT_TOLERANCE {
            return Err(Error::domain(function, format!("s = {s} is too close to {p}")));
        }
    }
    Ok(())
}

/// Breakpoints `lo ... hi` spaced uniformly in `ln x`, at most one period of
/// `x^{i Im(s)/2}` apart.
fn log_breaks(lo: f64, hi: f64, im_s: f64) -> Vec<f64> {
    let span = (hi / lo).ln();
    let n = ((span * im_s.abs() / (4.0 * PI)).ceil() as usize).max(4);
    (0..=n).map(|k| lo * (span * k as f64 / n as f64).exp()).collect()
}

/// Estimate of `int_X^inf r e^{-pi (x - X)} (x / X)^{sigma} dx` for an
/// exponentially decaying remainder of size `r` at `X`, padded by two.
fn exponential_tail(r: f64, x_cut: f64, sigma: f64) -> f64 {
    let rate = PI - sigma.max(0.0) / x_cut;
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * r / rate
}

/// Small-argument expansion `g(1/y) ~ a y^{(ell+1)/2} + c y^{ell/2}`.
struct SmallArgument {
    ell: u32,
    a: f64,
    c: f64,
}

impl SmallArgument {
    fn value(&self, y: f64) -> f64 {
        let e = self.ell as f64 / 2.0;
        self.a * y.powf(e + 0.5) + self.c * y.powf(e)
    }

    /// `int_Y^inf (a y^{(ell+1)/2} + c y^{ell/2}) y^{-s/2-1} dy`.
    fn tail(&self, y_cut: f64, s: Complex64) -> Complex64 {
        let e = self.ell as f64 / 2.0;
        let ln_y = y_cut.ln();
        let first = self.a * ((e + 0.5 - s / 2.0) * ln_y).exp() / (s / 2.0 - e - 0.5);
        let second = self.c * ((e - s / 2.0) * ln_y).exp() / (s / 2.0 - e);
        first + second
    }
}

/// `int_0^inf g(x) x^{s/2-1} dx` for a theta-type `g`.
///
/// `bound(x)` must bound `|g|` for real `x >= ray_cutoff`.
fn mellin_integral<G, B>(
    g: G,
    bound: B,
    small: &SmallArgument,
    s: Complex64,
    qc: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Result<Complex64>,
    B: Fn(f64) -> f64,
{
    let cut = qc.ray_cutoff;
    let breaks = log_breaks(1.0, cut, s.im);
    let power = s / 2.0 - 1.0;
    let abs_tol = qc.abs_tol / 4.0;
    let rel_tol = qc.rel_tol / 4.0;

    let upper = integrate(
        |x| Ok(g(x)? * (power * x.ln()).exp()),
        &breaks,
        abs_tol,
        rel_tol,
        qc.max_subdivisions,
    )?;
    let upper_tail = exponential_tail(bound(cut) * cut.powf(power.re), cut, power.re);

    // x = 1/y on (0, 1)
    let dual_power = -s / 2.0 - 1.0;
    let lower = integrate(
        |y| Ok(g(1.0 / y)? * (dual_power * y.ln()).exp()),
        &breaks,
        abs_tol,
        rel_tol,
        qc.max_subdivisions,
    )?;
    let remainder = (g(1.0 / cut)? - small.value(cut)).norm();
    let lower_tail = exponential_tail(remainder * cut.powf(dual_power.re), cut, dual_power.re);

    Ok(upper
        .plus(lower, real(1.0))
        .shifted(small.tail(cut, s), upper_tail + lower_tail))
}

/// `int_0^inf psi_j(x) x^{s/2-1} dx` for `Re s > 1`.
pub fn mellin_psi_integral(j: u32, s: Complex64, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    if !(s.re > 1.0) || !is_finite(s) {
        return Err(Error::domain("mellin_psi_integral", format!("Re s must exceed 1, s = {s}")));
    }
    let ctl = SeriesControl::default();
    let f0 = f_even_at_zero(j);
    let small = SmallArgument {
        ell: 0,
        a: 0.5 * sign_pow(j as usize) * f0,
        c: -0.5 * f0,
    };
    mellin_integral(
        |x| Ok(psi_j(j, ThetaArgument::real(x)?, &ctl)?.value),
        |x| psi_j_magnitude_bound(j, real(x)),
        &small,
        s,
        qc,
    )?
    .checked(qc)
}

/// `int_R u^ell H_n(sqrt(2 pi) u) exp(-pi u^2) du` from the monomial
/// expansion of `H_n`.
fn hermite_gaussian_moment(n: u32, ell: u32) -> Result<f64> {
    // coefficients of H_k in ascending powers
    let mut prev = vec![1.0];
    let mut cur = vec![0.0, 2.0];
    let coeffs = if n == 0 {
        prev.clone()
    } else {
        for k in 1..n as usize {
            let mut next = vec![0.0; k + 2];
            for (i, &c) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i] -= 2.0 * k as f64 * c;
            }
            prev = cur;
            cur = next;
        }
        cur
    };
    let mut total = 0.0;
    for (i, c) in coeffs.iter().enumerate() {
        let k = i as u32 + ell;
        if k % 2 == 1 || *c == 0.0 {
            continue;
        }
        let half = (k as f64 + 1.0) / 2.0;
        total += c * (2.0 * PI).powf(i as f64 / 2.0) * gamma_real(half)? * PI.powf(-half);
    }
    Ok(total)
}

/// `int_0^inf omega_{2q,ell}(t) t^{s/2-1} dt` for even `ell` and
/// `Re s > 1 + ell`.
pub fn mellin_omega_integral(q: u32, ell: u32, s: Complex64, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    if ell % 2 == 1 {
        return Err(Error::domain("mellin_omega_integral", format!("ell = {ell} must be even")));
    }
    if !(s.re > 1.0 + ell as f64) || !is_finite(s) {
        return Err(Error::domain(
            "mellin_omega_integral",
            format!("Re s must exceed {}, s = {s}", 1 + ell),
        ));
    }
    let ctl = SeriesControl::default();
    let n = 2 * q;
    let g0 = if ell == 0 {
        hermite_scaled(n as usize, real(0.0), 1.0)?.re
    } else {
        0.0
    };
    let small = SmallArgument {
        ell,
        a: 0.5 * hermite_gaussian_moment(n, ell)?,
        c: -0.5 * g0,
    };
    mellin_integral(
        |t| Ok(omega(n, ell, real(t), &ctl)?.value),
        |t| tail_bound(n as usize, ell, 1.0, real(t), 0),
        &small,
        s,
        qc,
    )?
    .checked(qc)
}

/// Split point `b` of the representations, restricted to
/// `|arg b| <= pi/2 - WEDGE_MARGIN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitParameter(Complex64);

impl SplitParameter {
    pub fn new(b: Complex64) -> Result<Self> {
        if !is_finite(b) || b.norm() == 0.0 {
            return Err(Error::domain("SplitParameter", format!("b = {b} is not usable")));
        }
        if b.arg().abs() > PI / 2.0 - WEDGE_MARGIN {
            return Err(Error::domain(
                "SplitParameter",
                format!("|arg b| = {} exceeds pi/2 - {WEDGE_MARGIN}", b.arg().abs()),
            ));
        }
        Ok(Self(b))
    }

    pub fn from_polar(modulus: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(modulus, theta))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn on_unit_circle(&self) -> bool {
        (self.0.norm() - 1.0).abs() < UNIT_CIRCLE_TOLERANCE
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.inv())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.conj())
    }
}

/// Contour from `b` to infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RayPath {
    /// `x = b + u`, `u >= 0`.
    #[default]
    Shifted,
    /// `x = b v`, `v >= 1`.
    Radial,
}

/// `int_b^inf psi_j(x) x^{s/2-1} dx` along `path`, unchecked.
fn ray_integral(j: u32, s: Complex64, b: SplitParameter, path: RayPath, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    let ctl = SeriesControl::default();
    let b = b.value();
    let power = s / 2.0 - 1.0;
    let integrand = |x: Complex64| -> Result<Complex64> {
        Ok(psi_j(j, ThetaArgument::new(x)?, &ctl)?.value * (power * x.ln()).exp())
    };
    let (result, end) = match path {
        RayPath::Shifted => {
            let r0 = b.norm();
            let breaks: Vec<f64> = log_breaks(r0, r0 + qc.ray_cutoff, s.im)
                .into_iter()
                .map(|r| r - r0)
                .collect();
            let res = integrate(|u| integrand(b + u), &breaks, qc.abs_tol / 2.0, qc.rel_tol / 2.0, qc.max_subdivisions)?;
            (res, b + qc.ray_cutoff)
        }
        RayPath::Radial => {
            let v_max = 1.0 + qc.ray_cutoff / b.re;
            let breaks = log_breaks(1.0, v_max, s.im);
            let res = integrate(|v| Ok(integrand(b * v)? * b), &breaks, qc.abs_tol / 2.0, qc.rel_tol / 2.0, qc.max_subdivisions)?;
            (res, b * v_max)
        }
    };
    let tail = psi_j_magnitude_bound(j, end) * (power * end.ln()).exp().norm();
    Ok(result.shifted(real(0.0), exponential_tail(tail, end.re, power.re)))
}

fn f_b_unchecked(j: u32, s: Complex64, b: SplitParameter, path: RayPath, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    if s.norm() < SINGULAR_POINT_TOLERANCE {
        return Err(Error::domain("F_b", format!("s = {s} is too close to 0")));
    }
    let integral = ray_integral(j, s, b, path, qc)?;
    let correction = f_even_at_zero(j) * (s / 2.0 * b.value().ln()).exp() / s;
    Ok(integral.shifted(-correction, 0.0))
}

/// `F_b(s) = int_b^inf psi_j(x) x^{s/2-1} dx - f_{2j}(0) b^{s/2} / s`,
/// integrated along `b + u`.
pub fn f_b(j: u32, s: Complex64, b: SplitParameter, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    f_b_unchecked(j, s, b, RayPath::Shifted, qc)?.checked(qc)
}

pub fn f_b_with_path(j: u32, s: Complex64, b: SplitParameter, path: RayPath, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    f_b_unchecked(j, s, b, path, qc)?.checked(qc)
}

/// Split representation for real `b > 0`:
///
/// ```text
/// (-1)^j int_{1/b}^inf x^{-(s+1)/2} psi_j dx + int_b^inf psi_j x^{s/2-1} dx
///   - f_{2j}(0) [b^{s/2}/s + (-1)^j b^{(s-1)/2}/(1-s)]
/// ```
pub fn xi_prop3(j: u32, s: Complex64, b: f64, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::domain("xi_prop3", format!("b = {b} must be positive")));
    }
    check_not_singular("xi_prop3", s)?;
    let sign = sign_pow(j as usize);
    let near = ray_integral(j, s, SplitParameter::new(real(b))?, RayPath::Shifted, qc)?;
    let far = ray_integral(j, 1.0 - s, SplitParameter::new(real(1.0 / b))?, RayPath::Shifted, qc)?;
    let lnb = b.ln();
    let correction = f_even_at_zero(j) * ((s / 2.0 * lnb).exp() / s + sign * ((s - 1.0) / 2.0 * lnb).exp() / (1.0 - s));
    near.plus(far, real(sign)).shifted(-correction, 0.0).checked(qc)
}

/// Which split form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop4Form {
    /// `F_b(s) + (-1)^j F_{1/b}(1 - s)`.
    Inverse,
    /// `F_b(s) + (-1)^j conj(F_b(1 - conj s))`, for `|b| = 1`.
    Conjugate,
}

impl Prop4Form {
    pub fn label(self) -> &'static str {
        match self {
            Prop4Form::Inverse => "i",
            Prop4Form::Conjugate => "ii",
        }
    }
}

pub fn xi_prop4(j: u32, s: Complex64, b: SplitParameter, form: Prop4Form, qc: &QuadratureConfig) -> Result<QuadratureResult> {
    check_not_singular("xi_prop4", s)?;
    if form == Prop4Form::Conjugate && !b.on_unit_circle() {
        return Err(Error::Form {
            modulus: b.value().norm(),
        });
    }
    let sign = real(sign_pow(j as usize));
    let first = f_b_unchecked(j, s, b, RayPath::Shifted, qc)?;
    let second = match form {
        Prop4Form::Inverse => f_b_unchecked(j, 1.0 - s, b.inverse(), RayPath::Shifted, qc)?,
        Prop4Form::Conjugate => {
            let r = f_b_unchecked(j, 1.0 - s.conj(), b, RayPath::Shifted, qc)?;
            QuadratureResult {
                value: r.value.conj(),
                ..r
            }
        }
    };
    first.plus(second, sign).checked(qc)
}

/// One representation evaluated for a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Prop3,
    Prop4(Prop4Form),
}

impl Representation {
    pub fn label(self) -> String {
        match self {
            Representation::Prop3 => "prop3".to_string(),
            Representation::Prop4(f) => format!("prop4-{}", f.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReprCell {
    pub j: u32,
    pub b: Complex64,
    pub representation: Representation,
    pub outcome: Result<QuadratureResult>,
    /// Cell value divided by `p_j(s) 2 / (s (s - 1))`, i.e. its estimate of `xi(s)`.
    pub xi_estimate: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReprReport {
    pub s: Complex64,
    pub xi_direct: Result<Complex64>,
    pub cells: Vec<ReprCell>,
    /// Largest `|a - b|` over all pairs of xi estimates, the direct value
    /// included.
    pub max_deviation: f64,
}

/// Evaluates every applicable representation for each `(j, b)` pair.
///
/// Real positive `b` gets the explicit real-split form as well; `b` on the
/// unit circle gets the conjugate form too. Cells are independent and
/// computed in parallel.
pub fn representation_report(s: Complex64, j_list: &[u32], b_list: &[Complex64], qc: &QuadratureConfig) -> ReprReport {
    let mut jobs = Vec::new();
    for &j in j_list {
        for &b in b_list {
            if b.im == 0.0 && b.re > 0.0 {
                jobs.push((j, b, Representation::Prop3));
            }
            jobs.push((j, b, Representation::Prop4(Prop4Form::Inverse)));
            if ((b.norm() - 1.0).abs()) < UNIT_CIRCLE_TOLERANCE {
                jobs.push((j, b, Representation::Prop4(Prop4Form::Conjugate)));
            }
        }
    }
    let cells: Vec<ReprCell> = jobs
        .into_par_iter()
        .map(|(j, b, representation)| {
            let outcome = match representation {
                Representation::Prop3 => xi_prop3(j, s, b.re, qc),
                Representation::Prop4(form) => SplitParameter::new(b).and_then(|sp| xi_prop4(j, s, sp, form, qc)),
            };
            let xi_estimate = match (&outcome, p_j(j, s)) {
                (Ok(r), Ok(p)) if p.norm() > 0.0 => Some(r.value * s * (s - 1.0) / (2.0 * p)),
                _ => None,
            };
            ReprCell {
                j,
                b,
                representation,
                outcome,
                xi_estimate,
            }
        })
        .collect();
    let direct = xi_direct(s);
    let mut values: Vec<Complex64> = cells.iter().filter_map(|c| c.xi_estimate).collect();
    if let Ok(d) = direct {
        values.push(d);
    }
    let mut max_deviation: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            max_deviation = max_deviation.max((a - b).norm());
        }
    }
    ReprReport {
        s,
        xi_direct: direct,
        cells,
        max_deviation,
    }
}
