//! Terminating hypergeometric series and the polynomial families built on them.
//!
//! The central object is
//!
//! ```text
//! P_q(s) = (-1)^q / q! * 2F1(-q, s/2; 1/2; 2)
//! ```
//!
//! which is also `H_q(s) + (-1)^q / q!` for the explicit Pochhammer sum
//! `H_q`. It satisfies `P_q(s) = (-1)^q P_q(1 - s)` and, for `q` up to 25,
//! is reliably evaluated in double precision. Beyond that degree the
//! alternating terms of the z = 2 series cancel badly; results are still
//! returned but [`precision_warning`] reports the degradation.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result, Warning};
use crate::numeric::{is_finite, real, sign_pow, CompensatedSum, Dd, DdComplex};
use crate::special::{
    digamma, factorial, factorial_f64, ln_gamma, pochhammer, pochhammer_exact, rational_to_f64,
};

/// Largest degree documented as accurate in double precision.
pub const MAX_RELIABLE_DEGREE: u32 = 25;

/// Selects a member of the `P_q` family, or of the Laguerre family
/// `P_n^alpha` when `alpha` is present.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyFamilySpec {
    q: u32,
    alpha: Option<f64>,
}

impl PolyFamilySpec {
    pub fn hermite(q: u32) -> Self {
        Self { q, alpha: None }
    }

    pub fn laguerre(n: u32, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::domain(
                "PolyFamilySpec",
                format!("alpha = {alpha} must exceed -1"),
            ));
        }
        Ok(Self {
            q: n,
            alpha: Some(alpha),
        })
    }

    pub fn degree(&self) -> u32 {
        self.q
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        match self.alpha {
            None => p_q(self.q, s),
            Some(alpha) => laguerre_mellin_poly(self.q, alpha, s),
        }
    }
}

/// Value of a terminating series together with the sum of term magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// `sum_k |term_k|`; the ratio `scale / |value|` bounds the loss of
    /// relative precision to cancellation.
    pub scale: f64,
}

/// `2F1(-q, b; c; z)`, summed in increasing `k`.
///
/// For real `c` and `z` the terms and their sum are carried in double-double
/// arithmetic, which keeps the cancellation of the alternating `z = 2`
/// series from eating into the double-precision result.
pub fn hyp2f1_terminating(q: u32, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    hyp2f1_terminating_scaled(q, b, c, z).map(|v| v.value)
}

/// As [`hyp2f1_terminating`], also returning the magnitude scale.
pub fn hyp2f1_terminating_scaled(
    q: u32,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<SeriesValue> {
    for k in 0..q as usize {
        let ck = c + k as f64;
        if ck.norm() < 1e-12 {
            return Err(Error::domain(
                "hyp2f1_terminating",
                format!("(c)_k vanishes: c = {c}, k = {}", k + 1),
            ));
        }
    }
    let (value, scale) = if c.im == 0.0 && z.im == 0.0 {
        let mut term = DdComplex::new(real(1.0));
        let mut acc = term;
        let mut scale = 1.0;
        for k in 0..q as usize {
            let kf = Dd::new(k as f64);
            let ratio = (kf - Dd::new(q as f64)) * Dd::new(z.re) / ((Dd::new(c.re) + kf) * (kf + Dd::new(1.0)));
            term = (term * DdComplex::new(b).shift(kf)).scale(ratio);
            acc = acc + term;
            scale += term.to_complex().norm();
        }
        (acc.to_complex(), scale)
    } else {
        let mut acc = CompensatedSum::new();
        let mut term = real(1.0);
        acc.add(term);
        for k in 0..q as usize {
            let kf = k as f64;
            term = term * (kf - q as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
            acc.add(term);
        }
        (acc.value(), acc.abs_sum())
    };
    if !is_finite(value) {
        return Err(Error::Overflow {
            function: "hyp2f1_terminating",
            at: b,
        });
    }
    Ok(SeriesValue { value, scale })
}

/// Exact `2F1(-q, b; c; z)` over the rationals.
pub fn hyp2f1_terminating_exact(
    q: u32,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    let mut term = BigRational::one();
    let mut acc = term.clone();
    let q_rat = BigRational::from_integer(BigInt::from(q));
    for k in 0..q as usize {
        let k_rat = BigRational::from_integer(BigInt::from(k));
        let ck = c + &k_rat;
        if ck.is_zero() {
            return Err(Error::domain(
                "hyp2f1_terminating_exact",
                format!("(c)_k vanishes at k = {}", k + 1),
            ));
        }
        term = term * (&k_rat - &q_rat) * (b + &k_rat) / (ck * (&k_rat + BigRational::one())) * z;
        acc += &term;
    }
    Ok(acc)
}

fn half() -> Complex64 {
    real(0.5)
}

/// `P_q(s) = (-1)^q / q! * 2F1(-q, s/2; 1/2; 2)`.
pub fn p_q(q: u32, s: Complex64) -> Result<Complex64> {
    p_q_scaled(q, s).map(|v| v.value)
}

/// [`p_q`] with its cancellation scale (same normalisation as the value).
pub fn p_q_scaled(q: u32, s: Complex64) -> Result<SeriesValue> {
    let series = hyp2f1_terminating_scaled(q, s / 2.0, half(), real(2.0))?;
    let prefactor = sign_pow(q as usize) / factorial_f64(q as usize);
    Ok(SeriesValue {
        value: series.value * prefactor,
        scale: series.scale * prefactor.abs(),
    })
}

/// Attached to results for degrees beyond [`MAX_RELIABLE_DEGREE`].
pub fn precision_warning(q: u32) -> Option<Warning> {
    (q > MAX_RELIABLE_DEGREE).then(|| Warning::Precision {
        q,
        detail: format!(
            "degree exceeds {MAX_RELIABLE_DEGREE}; cancellation in the z = 2 series degrades double precision"
        ),
    })
}

/// `H_q(s)` by direct summation of the Pochhammer form
/// `sum_{k<q} (-1)^k 2^{3(q-k)} / (k! (2q-2k)!) (s/2)_{q-k}`.
///
/// Shares no code path with [`p_q`] beyond the Pochhammer product, and so
/// serves as an oracle for it.
pub fn h_q_direct(q: u32, s: Complex64) -> Result<Complex64> {
    if 3 * q as u64 > f64::MAX_EXP as u64 - 1 {
        return Err(Error::Overflow {
            function: "h_q_direct",
            at: s,
        });
    }
    let q = q as usize;
    let half_s = DdComplex::new(s / 2.0);
    let mut acc = DdComplex::default();
    for k in 0..q {
        let num = BigInt::from(8).pow((q - k) as u32);
        let den = factorial(k) * factorial(2 * q - 2 * k);
        let coeff = Dd::from_rational(&BigRational::new(num, den)) * Dd::new(sign_pow(k));
        let mut rising = DdComplex::new(real(1.0));
        for i in 0..q - k {
            rising = rising * half_s.shift(Dd::new(i as f64));
        }
        acc = acc + rising.scale(coeff);
    }
    let value = acc.to_complex();
    if !is_finite(value) {
        return Err(Error::Overflow {
            function: "h_q_direct",
            at: s,
        });
    }
    Ok(value)
}

/// `p_j(s) = (8 pi)^{-j} (-1)^j (2j)! 2F1(-j, s/2; 1/2; 2) / j!`.
pub fn p_j(j: u32, s: Complex64) -> Result<Complex64> {
    let f = hyp2f1_terminating(j, s / 2.0, half(), real(2.0))?;
    let j = j as usize;
    let ratio = rational_to_f64(&BigRational::new(factorial(2 * j), factorial(j)));
    Ok(f * (8.0 * PI).powi(-(j as i32)) * sign_pow(j) * ratio)
}

/// Exact coefficients of `P_q(s)` in ascending powers of `s`.
pub fn p_q_coefficients(q: u32) -> Vec<BigRational> {
    let q_us = q as usize;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut poly = vec![BigRational::zero(); q_us + 1];
    // (s/2)_k as a polynomial in s, built incrementally
    let mut rising = vec![BigRational::one()];
    let mut coeff = BigRational::one();
    let q_rat = BigRational::from_integer(BigInt::from(q));
    for k in 0..=q_us {
        for (i, r) in rising.iter().enumerate() {
            poly[i] += &coeff * r;
        }
        if k == q_us {
            break;
        }
        let k_rat = BigRational::from_integer(BigInt::from(k));
        // coefficient update: (-q + k) / (1/2 + k) * 2 / (k + 1)
        coeff = coeff * (&k_rat - &q_rat) * BigRational::from_integer(BigInt::from(2))
            / ((&half + &k_rat) * (&k_rat + BigRational::one()));
        // rising *= (s/2 + k)
        let mut next = vec![BigRational::zero(); rising.len() + 1];
        for (i, r) in rising.iter().enumerate() {
            next[i] += r * &k_rat;
            next[i + 1] += r * &half;
        }
        rising = next;
    }
    let prefactor = BigRational::new(
        BigInt::from(if q % 2 == 0 { 1 } else { -1 }),
        factorial(q_us),
    );
    poly.into_iter().map(|c| c * &prefactor).collect()
}

/// Which line of the derivative formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeForm {
    /// Digamma differences `psi(s/2 + j) - psi(s/2)`; singular at `s/2` a
    /// non-positive integer.
    Digamma,
    /// Derivative of the rising factorial as a sum of partial products;
    /// entire in `s`.
    #[default]
    RationalSum,
}

/// `d/ds 2F1(-q, s/2; 1/2; 2)`.
pub fn d2f1_ds(q: u32, s: Complex64, form: DerivativeForm) -> Result<Complex64> {
    let a = s / 2.0;
    let mut acc = CompensatedSum::new();
    // coeff_j = (-q)_j / (1/2)_j * 2^j / j!
    let mut coeff = 1.0;
    let mut rising = real(1.0);
    let mut rising_deriv = real(0.0);
    for j in 1..=q as usize {
        let jm1 = (j - 1) as f64;
        coeff *= (jm1 - q as f64) / (0.5 + jm1) * 2.0 / j as f64;
        rising_deriv = rising_deriv * (a + jm1) + rising;
        rising *= a + jm1;
        let term = match form {
            DerivativeForm::RationalSum => rising_deriv,
            DerivativeForm::Digamma => rising * (digamma(a + j as f64)? - digamma(a)?),
        };
        acc.add(coeff * term);
    }
    Ok(acc.value() * 0.5)
}

/// The two exact closed forms of `d/ds 2F1(-q, s/2; 1/2; 2)` at `s = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeAtZero {
    /// `1/2 sum_{j=1}^{q} (-q)_j / (1/2)_j 2^j / j`
    pub half_sum: BigRational,
    /// `-2q 3F2(1-q, 1, 1; 3/2, 2; 2)`
    pub hypergeometric: BigRational,
}

pub fn deriv_2f1_at_zero_forms(q: u32) -> DerivativeAtZero {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    let neg_q = BigRational::from_integer(-BigInt::from(q));

    let mut half_sum = BigRational::zero();
    for j in 1..=q as usize {
        let term = pochhammer_exact(&neg_q, j) / pochhammer_exact(&half, j) * two.pow(j as i32)
            / BigRational::from_integer(BigInt::from(j));
        half_sum += term;
    }
    half_sum *= &half;

    let mut series = BigRational::zero();
    let one = BigRational::one();
    let one_minus_q = &one + &neg_q;
    let three_halves = BigRational::new(BigInt::from(3), BigInt::from(2));
    for k in 0..q as usize {
        let num = pochhammer_exact(&one_minus_q, k)
            * pochhammer_exact(&one, k)
            * pochhammer_exact(&one, k)
            * two.pow(k as i32);
        let den = pochhammer_exact(&three_halves, k)
            * pochhammer_exact(&two, k)
            * BigRational::from_integer(factorial(k));
        series += num / den;
    }
    let hypergeometric = -two * BigRational::from_integer(BigInt::from(q)) * series;

    DerivativeAtZero {
        half_sum,
        hypergeometric,
    }
}

/// `d/ds 2F1(-q, s/2; 1/2; 2)` at `s = 0`.
pub fn deriv_2f1_at_zero(q: u32) -> f64 {
    let forms = deriv_2f1_at_zero_forms(q);
    debug_assert_eq!(forms.half_sum, forms.hypergeometric);
    rational_to_f64(&forms.half_sum)
}

/// Mellin polynomial of the Laguerre function,
/// `P_n^alpha(s) = (1 + alpha)_n / n! * 2F1(-n, s + alpha/2; alpha + 1; 2)`.
pub fn laguerre_mellin_poly(n: u32, alpha: f64, s: Complex64) -> Result<Complex64> {
    if !(alpha > -1.0) {
        return Err(Error::domain(
            "laguerre_mellin_poly",
            format!("alpha = {alpha} must exceed -1"),
        ));
    }
    let f = hyp2f1_terminating(n, s + alpha / 2.0, real(alpha + 1.0), real(2.0))?;
    let prefactor = pochhammer(real(1.0 + alpha), n as usize).re / factorial_f64(n as usize);
    Ok(f * prefactor)
}

/// Closed form of `2F1(-n, (alpha+1)/2; alpha+1; 2)` as the gamma ratio
/// `Gamma(1/2) Gamma(-(n+alpha)/2) / (Gamma(-alpha/2) Gamma((1-n)/2))`.
///
/// Odd `n` puts `(1-n)/2` on a pole of the denominator, so the value is
/// exactly zero; this is returned without evaluating the gammas.
pub fn hyp2f1_gamma_ratio(n: u32, alpha: f64) -> Result<Complex64> {
    if n % 2 == 1 {
        return Ok(real(0.0));
    }
    let top = -(n as f64 + alpha) / 2.0;
    if top <= 0.0 && (top - top.round()).abs() < 1e-12 {
        return Err(Error::domain(
            "hyp2f1_gamma_ratio",
            format!("-(n + alpha)/2 = {top} is a pole of the numerator"),
        ));
    }
    let log = ln_gamma(half())? + ln_gamma(real(top))?
        - ln_gamma(real(-alpha / 2.0))?
        - ln_gamma(real((1.0 - n as f64) / 2.0))?;
    // every argument is real, so the phase is a multiple of pi
    Ok(real(log.exp().re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn q_zero_is_one() {
        for z in [c(0.3, 1.0), c(2.0, 0.0)] {
            assert_eq!(hyp2f1_terminating(0, c(5.0, 1.0), c(-0.5, 2.0), z).unwrap(), real(1.0));
        }
    }

    #[test]
    fn low_degree_closed_forms() {
        for s in [c(0.3, 0.0), c(-2.0, 1.5), c(7.0, -3.0)] {
            let f1 = hyp2f1_terminating(1, s / 2.0, half(), real(2.0)).unwrap();
            assert!(close(f1, 1.0 - 2.0 * s, 1e-15));
            let f2 = hyp2f1_terminating(2, s / 2.0, half(), real(2.0)).unwrap();
            let expected = s * s * (4.0 / 3.0) - s * (4.0 / 3.0) + 1.0;
            assert!(close(f2, expected, 1e-14));
            assert_eq!(p_q(0, s).unwrap(), real(1.0));
            assert!(close(p_q(1, s).unwrap(), 2.0 * s - 1.0, 1e-15));
        }
    }

    #[test]
    fn vanishing_denominator_is_rejected() {
        assert!(matches!(
            hyp2f1_terminating(3, real(1.0), real(-1.0), real(2.0)),
            Err(Error::Domain { .. })
        ));
        // (c)_k with k <= q only reaches c + q - 1
        assert!(hyp2f1_terminating(2, real(1.0), real(-2.0), real(2.0)).is_ok());
        assert!(hyp2f1_terminating_exact(3, &rat(1, 1), &rat(-2, 1), &rat(2, 1)).is_err());
    }

    #[test]
    fn odd_degree_vanishes_at_half() {
        for q in (1..=15).step_by(2) {
            assert!(p_q(q, half()).unwrap().norm() < 1e-13, "q = {q}");
        }
    }

    #[test]
    fn h_q_low_degree() {
        assert_eq!(h_q_direct(0, c(3.0, 1.0)).unwrap(), real(0.0));
        for s in [c(0.5, 2.0), c(-3.0, 0.0)] {
            assert!(close(h_q_direct(1, s).unwrap(), 2.0 * s, 1e-15));
            let h2 = s * s * (2.0 / 3.0) - s * (2.0 / 3.0);
            assert!(close(h_q_direct(2, s).unwrap(), h2, 1e-14));
        }
        assert!(matches!(h_q_direct(400, real(1.0)), Err(Error::Overflow { .. })));
    }

    #[test]
    fn p_j_definition() {
        let s = c(0.8, -2.5);
        assert_eq!(p_j(0, s).unwrap(), real(1.0));
        assert!(close(p_j(1, s).unwrap(), (2.0 * s - 1.0) / (4.0 * PI), 1e-15));
        for j in 0..=12u32 {
            let ju = j as usize;
            let norm = (8.0 * PI).powi(-(j as i32)) * factorial_f64(2 * ju);
            let via_pq = p_q(j, s).unwrap() * norm;
            assert!(close(p_j(j, s).unwrap(), via_pq, 1e-13), "j = {j}");
            let f = hyp2f1_terminating(j, s / 2.0, half(), real(2.0)).unwrap();
            let rearranged = p_j(j, s).unwrap() / (norm / factorial_f64(ju));
            assert!(close(rearranged, f * sign_pow(ju), 1e-13));
        }
    }

    #[test]
    fn exact_coefficients_match_float_evaluation() {
        for q in 0..=20u32 {
            let coeffs = p_q_coefficients(q);
            assert_eq!(coeffs.len(), q as usize + 1);
            assert!(!coeffs[q as usize].is_zero());
            let s = c(0.37, 1.3);
            let mut horner = real(0.0);
            for a in coeffs.iter().rev() {
                horner = horner * s + rational_to_f64(a);
            }
            let direct = p_q_scaled(q, s).unwrap();
            assert!(
                (horner - direct.value).norm() <= 1e-13 * direct.scale.max(1.0),
                "q = {q}"
            );
        }
        assert_eq!(p_q_coefficients(2), vec![rat(1, 2), rat(-2, 3), rat(2, 3)]);
    }

    #[test]
    fn leading_coefficient_dominates_at_infinity() {
        for q in 1..=25u32 {
            let lead = rational_to_f64(&p_q_coefficients(q)[q as usize]);
            assert!(lead > 0.0);
            let s = 1e6;
            let ratio = p_q(q, real(s)).unwrap().re / s.powi(q as i32);
            assert!(((ratio - lead) / lead).abs() < 1e-4, "q = {q}");
        }
    }

    #[test]
    fn derivative_forms_agree() {
        assert_eq!(d2f1_ds(0, c(0.3, 0.1), DerivativeForm::RationalSum).unwrap(), real(0.0));
        assert!(close(d2f1_ds(1, c(0.3, 0.1), DerivativeForm::RationalSum).unwrap(), real(-2.0), 1e-15));
        for q in 0..=12 {
            for s in [c(0.7, 0.2), c(3.0, -4.0), c(-1.3, 2.0)] {
                let a = d2f1_ds(q, s, DerivativeForm::RationalSum).unwrap();
                let b = d2f1_ds(q, s, DerivativeForm::Digamma).unwrap();
                assert!(close(a, b, 1e-10), "q = {q}, s = {s}");
            }
        }
        assert!(d2f1_ds(3, real(0.0), DerivativeForm::Digamma).is_err());
        assert!(d2f1_ds(3, real(0.0), DerivativeForm::RationalSum).is_ok());
    }

    #[test]
    fn derivative_at_zero_forms() {
        assert!(deriv_2f1_at_zero_forms(0).half_sum.is_zero());
        assert_eq!(deriv_2f1_at_zero(0), 0.0);
        assert_eq!(deriv_2f1_at_zero(1), -2.0);
        for q in 0..=15 {
            let forms = deriv_2f1_at_zero_forms(q);
            assert_eq!(forms.half_sum, forms.hypergeometric, "q = {q}");
            let limit = d2f1_ds(q, real(0.0), DerivativeForm::RationalSum).unwrap();
            let exact = deriv_2f1_at_zero(q);
            assert!((limit.re - exact).abs() <= 1e-10 * exact.abs().max(1.0), "q = {q}");
        }
    }

    #[test]
    fn laguerre_family() {
        let s = c(0.4, 1.7);
        assert_eq!(laguerre_mellin_poly(0, 0.7, s).unwrap(), real(1.0));
        for alpha in [-0.5, 0.0, 0.7, 3.0] {
            assert!(close(laguerre_mellin_poly(1, alpha, s).unwrap(), 1.0 - 2.0 * s, 1e-14));
            for n in (1..10).step_by(2) {
                // hypergeometric argument (alpha+1)/2 is s = 1/2
                let b = real((alpha + 1.0) / 2.0);
                let scale = hyp2f1_terminating_scaled(n, b, real(alpha + 1.0), real(2.0))
                    .unwrap()
                    .scale;
                let value = laguerre_mellin_poly(n, alpha, half()).unwrap();
                let prefactor = pochhammer(real(1.0 + alpha), n as usize).re / factorial_f64(n as usize);
                assert!(value.norm() < 1e-14 * scale * prefactor.abs(), "n = {n}, alpha = {alpha}");
            }
        }
        assert!(laguerre_mellin_poly(2, -1.0, s).is_err());
    }

    #[test]
    fn laguerre_reduces_to_p_q() {
        // P_n^{-1/2}(s/2 + 1/4) = (-1)^n (1/2)_n P_n(s)
        for n in 0..=12u32 {
            for s in [c(0.5, 3.0), c(2.0, -1.0), c(-4.0, 0.5)] {
                let lag = laguerre_mellin_poly(n, -0.5, s / 2.0 + 0.25).unwrap();
                let factor = sign_pow(n as usize) * pochhammer(half(), n as usize).re;
                assert!(close(lag, p_q(n, s).unwrap() * factor, 1e-12));
            }
        }
    }

    #[test]
    fn gamma_ratio_matches_direct_sum() {
        assert_eq!(hyp2f1_gamma_ratio(3, 0.3).unwrap(), real(0.0));
        assert!((hyp2f1_gamma_ratio(0, 0.3).unwrap().re - 1.0).abs() < 1e-14);
        // n = 2, alpha = 1/2: three-term sum 1 - 2 + 1.4
        assert!((hyp2f1_gamma_ratio(2, 0.5).unwrap().re - 0.4).abs() < 1e-12);
        for n in 0..=12u32 {
            for alpha in [-0.5, -0.3, 0.5, 1.7, 2.5] {
                let direct =
                    hyp2f1_terminating(n, real((alpha + 1.0) / 2.0), real(alpha + 1.0), real(2.0))
                        .unwrap();
                let ratio = hyp2f1_gamma_ratio(n, alpha).unwrap();
                assert!(close(ratio, direct, 1e-11), "n = {n}, alpha = {alpha}: {ratio} vs {direct}");
            }
        }
        assert!(matches!(hyp2f1_gamma_ratio(2, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn family_spec() {
        assert!(PolyFamilySpec::laguerre(2, -1.5).is_err());
        let spec = PolyFamilySpec::hermite(3);
        assert_eq!(spec.evaluate(half()).unwrap().norm(), 0.0);
        assert!(precision_warning(25).is_none());
        assert!(precision_warning(26).is_some());
    }

    proptest! {
        #[test]
        fn functional_equation(q in 0u32..=25, re in -14.0f64..14.0, im in -14.0f64..14.0) {
            let s = c(re, im);
            prop_assume!(s.norm() <= 20.0);
            let lhs = p_q(q, s).unwrap();
            let rhs = p_q(q, 1.0 - s).unwrap() * sign_pow(q as usize);
            prop_assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0));
        }

        #[test]
        fn derivative_symmetry(q in 0u32..=15, re in -6.0f64..6.0, im in -6.0f64..6.0) {
            // P_q'(s) = (-1)^{q+1} P_q'(1 - s)
            let s = c(re, im);
            let d = d2f1_ds(q, s, DerivativeForm::RationalSum).unwrap();
            let mirrored = d2f1_ds(q, 1.0 - s, DerivativeForm::RationalSum).unwrap();
            let scale = d2f1_ds(q, c(s.norm(), 0.0), DerivativeForm::RationalSum).unwrap().norm().max(1.0);
            prop_assert!((d + mirrored * sign_pow(q as usize)).norm() <= 1e-9 * scale);
        }

        #[test]
        fn derivative_matches_central_difference(q in 0u32..=10, re in -5.0f64..5.0, im in -5.0f64..5.0) {
            let s = c(re, im);
            let h = 1e-6;
            let f = |x: Complex64| hyp2f1_terminating(q, x / 2.0, half(), real(2.0)).unwrap();
            let fd = (f(s + h) - f(s - h)) / (2.0 * h);
            let d = d2f1_ds(q, s, DerivativeForm::RationalSum).unwrap();
            let scale = hyp2f1_terminating_scaled(q, c(s.norm(), 0.0) / 2.0, half(), real(2.0)).unwrap().scale;
            prop_assert!((fd - d).norm() <= 1e-5 * d.norm().max(1e-3 * scale).max(1.0));
        }

        #[test]
        fn hypergeometric_matches_direct_sum(q in 0u32..=15, re in -7.0f64..7.0, im in -7.0f64..7.0) {
            let s = c(re, im);
            prop_assume!(s.norm() <= 10.0);
            let via_hyp = p_q_scaled(q, s).unwrap();
            let via_direct = h_q_direct(q, s).unwrap() + sign_pow(q as usize) / factorial_f64(q as usize);
            prop_assert!((via_hyp.value - via_direct).norm() <= 1e-10 * via_hyp.value.norm().max(1e-3 * via_hyp.scale));
        }
    }
}

