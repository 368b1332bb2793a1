//! The Riemann zeta function, its derivative, and the Hermite family
//! `zeta_{2q,ell}(s) = (2q)! zeta(s - ell) P_q(s)`.
//!
//! `zeta` sums the alternating eta series with Borwein's weights for
//! `Re s >= 0` and uses the reflection formula below that line. The number
//! of terms grows linearly with `|Im s|` so that accuracy stays near 1e-13
//! up to `|Im s| = 60`.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result, Warning};
use crate::hyper::{d2f1_ds, hyp2f1_terminating, hyp2f1_terminating_exact, p_q, DerivativeForm};
use crate::numeric::{is_finite, real, sign_pow};
use crate::special::{bernoulli, cos_pi, digamma, factorial, gamma, rational_to_f64, sin_pi};

const POLE_TOLERANCE: f64 = 1e-12;

fn borwein_terms(s: Complex64) -> usize {
    24 + (1.8 * s.im.abs()).ceil() as usize
}

/// Borwein weights `(d_k - d_n) / d_n` for `k = 0..n`.
fn borwein_weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 1.0;
    d.push(acc);
    for i in 0..n {
        let fi = i as f64;
        term *= 2.0 * (nf + fi) * (nf - fi) / ((fi + 1.0) * (2.0 * fi + 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    d.truncate(n);
    d.into_iter().map(|dk| (dk - dn) / dn).collect()
}

/// Returns `(eta(s), eta'(s))`.
fn eta_with_derivative(s: Complex64, with_derivative: bool) -> (Complex64, Complex64) {
    let n = borwein_terms(s) + if with_derivative { 6 } else { 0 };
    let weights = borwein_weights(n);
    let mut eta = real(0.0);
    let mut deta = real(0.0);
    for (k, w) in weights.iter().enumerate() {
        let ln_k = ((k + 1) as f64).ln();
        let power = (-s * ln_k).exp();
        let signed = sign_pow(k) * w;
        eta -= signed * power;
        if with_derivative {
            deta += signed * ln_k * power;
        }
    }
    (eta, deta)
}

/// `exp(w) - 1` without cancellation for small `|w|`.
fn expm1(w: Complex64) -> Complex64 {
    let half_sin = (0.5 * w.im).sin();
    Complex64::new(
        w.re.exp_m1() * w.im.cos() - 2.0 * half_sin * half_sin,
        w.re.exp() * w.im.sin(),
    )
}

/// `1 - 2^{1-s}`
fn eta_denominator(s: Complex64) -> Complex64 {
    -expm1((1.0 - s) * LN_2)
}

fn check_pole(s: Complex64) -> Result<()> {
    if (s - 1.0).norm() < POLE_TOLERANCE {
        return Err(Error::Pole {
            function: "zeta",
            at: s,
        });
    }
    Ok(())
}

/// Factor `chi(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s)` with
/// `zeta(s) = chi(s) zeta(1 - s)`, and its derivative.
fn reflection_factor(s: Complex64) -> Result<(Complex64, Complex64)> {
    let one_minus = 1.0 - s;
    let g = gamma(one_minus)?;
    let base = (s * (2.0 * PI).ln()).exp() / PI * g;
    let sin = sin_pi(s / 2.0);
    let cos = cos_pi(s / 2.0);
    let chi = base * sin;
    let dchi = base * (sin * ((2.0 * PI).ln() - digamma(one_minus)?) + cos * (PI / 2.0));
    Ok((chi, dchi))
}

/// Riemann zeta function for complex `s != 1`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    check_pole(s)?;
    let value = if s.re < 0.0 {
        let (chi, _) = reflection_factor(s)?;
        chi * zeta(1.0 - s)?
    } else {
        let (eta, _) = eta_with_derivative(s, false);
        eta / eta_denominator(s)
    };
    if !is_finite(value) {
        return Err(Error::Overflow {
            function: "zeta",
            at: s,
        });
    }
    Ok(value)
}

/// `(s - 1) zeta(s)`, finite at `s = 1` (where it equals 1). Requires `Re s >= 0`.
pub fn zeta_times_s_minus_one(s: Complex64) -> Result<Complex64> {
    if s.re < 0.0 {
        return Err(Error::domain(
            "zeta_times_s_minus_one",
            "requires Re s >= 0",
        ));
    }
    let (eta, _) = eta_with_derivative(s, false);
    // (1 - 2^{1-s}) / (s - 1) = ln 2 * (e^w - 1) / w, w = (1 - s) ln 2
    let w = (1.0 - s) * LN_2;
    let ratio = if w.norm() < 1e-2 {
        // 1 + w/2 + w^2/6 + ...
        let mut term = real(1.0);
        let mut acc = real(1.0);
        for k in 2..12 {
            term = term * w / k as f64;
            acc += term;
        }
        acc
    } else {
        expm1(w) / w
    };
    Ok(eta / (LN_2 * ratio))
}

/// Derivative `zeta'(s)`.
pub fn zeta_deriv(s: Complex64) -> Result<Complex64> {
    check_pole(s)?;
    let value = if s.re < 0.0 {
        let (chi, dchi) = reflection_factor(s)?;
        let mirrored = 1.0 - s;
        dchi * zeta(mirrored)? - chi * zeta_deriv(mirrored)?
    } else {
        let (eta, deta) = eta_with_derivative(s, true);
        let denom = eta_denominator(s);
        // d/ds (1 - 2^{1-s}) = 2^{1-s} ln 2
        let ddenom = (1.0 - denom) * LN_2;
        deta / denom - eta * ddenom / (denom * denom)
    };
    if !is_finite(value) {
        return Err(Error::Overflow {
            function: "zeta_deriv",
            at: s,
        });
    }
    Ok(value)
}

/// Completed zeta `pi^{-s/2} Gamma(s/2) zeta(s)`.
pub fn completed_zeta(s: Complex64) -> Result<Complex64> {
    Ok((-s / 2.0 * PI.ln()).exp() * gamma(s / 2.0)? * zeta(s)?)
}

/// A member of the zeta family together with the theorem's hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaFamilyPoint {
    pub q: u32,
    pub ell: u32,
    pub s: Complex64,
}

/// Value of a family member plus any caveats about the evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyValue {
    pub value: Complex64,
    pub warnings: Vec<Warning>,
}

impl ZetaFamilyPoint {
    pub fn new(q: u32, ell: u32, s: Complex64) -> Self {
        Self { q, ell, s }
    }

    /// The theorem needs `2q + ell` even, i.e. `ell` even.
    pub fn parity_ok(&self) -> bool {
        self.ell % 2 == 0
    }

    /// True outside the half-plane `Re s > 1 + ell` of the Mellin integral.
    pub fn by_continuation(&self) -> bool {
        self.s.re <= 1.0 + self.ell as f64
    }

    pub fn evaluate(&self) -> Result<FamilyValue> {
        let value = zeta_family(self.q, self.ell, self.s)?;
        let mut warnings = Vec::new();
        if !self.parity_ok() {
            warnings.push(Warning::OddEll { ell: self.ell });
        }
        if self.by_continuation() {
            warnings.push(Warning::AnalyticContinuation { ell: self.ell });
        }
        warnings.extend(crate::hyper::precision_warning(self.q));
        Ok(FamilyValue { value, warnings })
    }
}

/// `zeta_{2q,ell}(s) = (2q)! zeta(s - ell) P_q(s)`.
pub fn zeta_family(q: u32, ell: u32, s: Complex64) -> Result<Complex64> {
    let shifted = s - ell as f64;
    if (shifted - 1.0).norm() < POLE_TOLERANCE {
        return Err(Error::Pole {
            function: "zeta_family",
            at: s,
        });
    }
    let fact = rational_to_f64(&BigRational::from_integer(factorial(2 * q as usize)));
    Ok(zeta(shifted)? * p_q(q, s)? * fact)
}

/// Sign of the Pochhammer argument `±s/2` in the hypergeometric form of
/// `zeta_{2q,0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypArgumentSign {
    /// `2F1(-q, s/2; 1/2; 2)`, the form that satisfies the Mellin identity.
    Plus,
    /// `2F1(-q, -s/2; 1/2; 2)`; fails the Mellin identity for `q >= 1`.
    Minus,
}

impl HypArgumentSign {
    pub fn factor(self) -> f64 {
        match self {
            HypArgumentSign::Plus => 1.0,
            HypArgumentSign::Minus => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HypArgumentSign::Plus => "+s/2",
            HypArgumentSign::Minus => "-s/2",
        }
    }
}

/// Sign under which the special-value formulas agree with `zeta_family`,
/// as established by quadrature of the Mellin integral (see the `verify`
/// module's convention check).
pub const VERIFIED_SIGN: HypArgumentSign = HypArgumentSign::Plus;

/// `c_q = (-1)^q (2q)! / q! = H_{2q}(0)`.
pub fn c_q(q: u32) -> BigInt {
    let q = q as usize;
    let v = factorial(2 * q) / factorial(q);
    if q % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `c_q 2F1(-q, -s/2; 1/2; 2) zeta(s)`, the `-s/2` variant of the Gamma-ratio
/// form. Kept alongside [`zeta_family`] so the two can be compared; the sign
/// that actually holds is [`VERIFIED_SIGN`].
pub fn zeta_family_hyp_form(q: u32, s: Complex64) -> Result<Complex64> {
    zeta_family_hyp_form_with(q, s, HypArgumentSign::Minus)
}

pub fn zeta_family_hyp_form_with(q: u32, s: Complex64, sign: HypArgumentSign) -> Result<Complex64> {
    check_pole(s)?;
    let f = hyp2f1_terminating(q, s * (sign.factor() / 2.0), real(0.5), real(2.0))?;
    let cq = rational_to_f64(&BigRational::from_integer(c_q(q)));
    Ok(f * cq * zeta(s)?)
}

/// Exact special value `rational * pi^pi_power`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialValue {
    pub rational: BigRational,
    pub pi_power: u32,
}

impl SpecialValue {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational) * PI.powi(self.pi_power as i32)
    }

    pub fn value(&self) -> Complex64 {
        real(self.to_f64())
    }
}

fn hyp_exact(q: u32, b: BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    hyp2f1_terminating_exact(q, &b, &half, &two).expect("c = 1/2 never hits a pole")
}

/// `zeta_{2q,0}(2m)` in closed form with [`VERIFIED_SIGN`].
pub fn special_value_even(q: u32, m: u32) -> Result<SpecialValue> {
    special_value_even_with(q, m, VERIFIED_SIGN)
}

/// `c_q 2F1(-q, ±m; 1/2; 2) (2 pi)^{2m} (-1)^{m+1} B_{2m} / (2 (2m)!)`.
pub fn special_value_even_with(q: u32, m: u32, sign: HypArgumentSign) -> Result<SpecialValue> {
    if m == 0 {
        return Err(Error::domain("special_value_even", "m must be positive"));
    }
    let mu = m as usize;
    let b = BigRational::from_integer(BigInt::from(m as i64 * sign.factor() as i64));
    let zeta_rational = bernoulli(2 * mu)
        * BigRational::new(
            BigInt::from(2).pow(2 * m) * sign_pow(mu + 1) as i64,
            BigInt::from(2) * factorial(2 * mu),
        );
    Ok(SpecialValue {
        rational: BigRational::from_integer(c_q(q)) * hyp_exact(q, b) * zeta_rational,
        pi_power: 2 * m,
    })
}

/// `zeta_{2q,0}(-n)` in closed form with [`VERIFIED_SIGN`].
pub fn special_value_neg(q: u32, n: u32) -> SpecialValue {
    special_value_neg_with(q, n, VERIFIED_SIGN)
}

/// `c_q 2F1(-q, ∓n/2; 1/2; 2) (-1)^n B_{n+1} / (n+1)`; the `+n/2` form
/// is the `Minus` sign at `s = -n`.
pub fn special_value_neg_with(q: u32, n: u32, sign: HypArgumentSign) -> SpecialValue {
    let nu = n as usize;
    let b = BigRational::new(BigInt::from(-(n as i64) * sign.factor() as i64), BigInt::from(2));
    let zeta_rational = bernoulli(nu + 1)
        * BigRational::new(BigInt::from(sign_pow(nu) as i64), BigInt::from(nu + 1));
    SpecialValue {
        rational: BigRational::from_integer(c_q(q)) * hyp_exact(q, b) * zeta_rational,
        pi_power: 0,
    }
}

/// `zeta_{2q,0}'(s) = c_q [F zeta'(s) + zeta(s) dF/ds]` with
/// `F = 2F1(-q, s/2; 1/2; 2)`.
pub fn zeta_family_deriv(q: u32, s: Complex64) -> Result<Complex64> {
    check_pole(s)?;
    let f = hyp2f1_terminating(q, s / 2.0, real(0.5), real(2.0))?;
    let df = d2f1_ds(q, s, DerivativeForm::RationalSum)?;
    let cq = rational_to_f64(&BigRational::from_integer(c_q(q)));
    Ok((f * zeta_deriv(s)? + zeta(s)? * df) * cq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use crate::special::factorial_f64;
    use proptest::prelude::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    /// Euler-Maclaurin summation; independent of the eta-series route.
    fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
        let n = 30 + s.im.abs() as usize;
        let nf = n as f64;
        let mut acc = real(0.0);
        for k in (1..n).rev() {
            acc += (-s * (k as f64).ln()).exp();
        }
        let n_pow = (-s * nf.ln()).exp();
        acc += n_pow * nf / (s - 1.0) + 0.5 * n_pow;
        // B_{2k}/(2k)! * s (s+1) ... (s+2k-2) N^{-s-2k+1}
        let b2k = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
        let mut rising = s;
        let mut power = n_pow / nf;
        for (i, b) in b2k.iter().enumerate() {
            let k = i + 1;
            acc += rising * power * (b / factorial_f64(2 * k));
            rising = rising * (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
            power /= nf * nf;
        }
        acc
    }

    #[test]
    fn classical_values() {
        assert!((zeta(real(0.0)).unwrap().re + 0.5).abs() < 1e-15);
        assert!((zeta(real(2.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-14);
        assert_eq!(zeta(real(-2.0)).unwrap(), real(0.0));
        assert_eq!(zeta(real(-10.0)).unwrap(), real(0.0));
        assert!((zeta(real(-1.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-15);
        assert!(matches!(zeta(real(1.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn zeta_two_against_tail_bounded_sum() {
        // sum_{k<N} k^{-2} + tail, with the tail bracketed by 1/N and 1/(N-1)
        let n = 1_000_000usize;
        let head: f64 = (1..n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
        let lo = head + 1.0 / n as f64;
        let hi = head + 1.0 / (n as f64 - 1.0);
        let z = zeta(real(2.0)).unwrap().re;
        assert!(z >= lo - 1e-15 && z <= hi + 1e-15);
        assert!((z - PI * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn matches_arbitrary_precision_reference() {
        let cases = [
            (c(0.5, 14.0), c(0.022241142609993589246, -0.1032581232664500579)),
            (c(3.0, 2.0), c(0.97304196041894244856, -0.14769559300045379463)),
            (c(0.5, 5.0), c(0.70181237116568663004, 0.23103800839141992679)),
            (c(-3.5, 2.0), c(-0.0035609799649190723433, 0.042622537314776407267)),
            (c(0.3, 40.0), c(0.7487752095042258384, -1.4408854406344405111)),
            (c(2.0, 1.0), c(1.1503557032549026717, -0.43753086591960788112)),
            (c(1.01, 9.06), c(1.3441170236603739377, 0.10977073155037483006)),
            (c(0.5, 49.7), c(0.053625868852826982088, -0.086911136601038368292)),
            (c(-20.0, 10.0), c(-9609819.6252705349031, 24850620.200734894776)),
            (c(0.9, 0.001), c(-9.4291141146556446306, -0.099916226777734034738)),
        ];
        for (s, expected) in cases {
            let got = zeta(s).unwrap();
            assert!(rel(got, expected) < 1e-12, "s = {s}: {got} vs {expected}, rel {}", rel(got, expected));
        }
    }

    #[test]
    fn derivative_reference_values() {
        let cases = [
            (c(0.5, 14.0), c(0.74823369612008626253, 0.20443653378499741947)),
            (c(3.0, 2.0), c(0.049540663986453947204, 0.10355867283395649247)),
            (c(-3.5, 2.0), c(0.044483664059352796024, 0.018438093142976054109)),
            (c(2.0, 1.0), c(0.062490002190646997794, 0.4890335916798994564)),
        ];
        for (s, expected) in cases {
            let got = zeta_deriv(s).unwrap();
            assert!(rel(got, expected) < 1e-11, "s = {s}: {got} vs {expected}");
        }
    }

    #[test]
    fn derivative_special_points() {
        let d0 = zeta_deriv(real(0.0)).unwrap();
        assert!((d0.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-13);
        // zeta'(-2n) = (-1)^n (2n)! zeta(2n+1) / (2 (2 pi)^{2n})
        for n in 1..=4i32 {
            let nn = n as usize;
            let expected = sign_pow(nn) * factorial_f64(2 * nn) * zeta(real(2.0 * n as f64 + 1.0)).unwrap().re
                / (2.0 * (2.0 * PI).powi(2 * n));
            let got = zeta_deriv(real(-2.0 * n as f64)).unwrap();
            assert!((got.re - expected).abs() < 1e-13 * expected.abs(), "n = {n}");
        }
    }

    #[test]
    fn s_minus_one_product_is_regular() {
        assert!((zeta_times_s_minus_one(real(1.0)).unwrap() - 1.0).norm() < 1e-14);
        // (s - 1) zeta(s) = 1 + gamma (s - 1) + O((s-1)^2)
        let eps = 1e-7;
        let v = zeta_times_s_minus_one(real(1.0 + eps)).unwrap();
        assert!((v.re - 1.0 - 0.577_215_664_901_532_9 * eps).abs() < 1e-13);
        let s = c(1.3, 0.4);
        assert!(rel(zeta_times_s_minus_one(s).unwrap(), zeta(s).unwrap() * (s - 1.0)) < 1e-13);
    }

    #[test]
    fn family_values() {
        let s = c(2.5, 1.0);
        assert!(rel(zeta_family(0, 0, s).unwrap(), zeta(s).unwrap()) < 1e-15);
        assert!((zeta_family(1, 0, real(2.0)).unwrap().re - PI * PI).abs() < 1e-13);
        for m in 1..=5 {
            assert_eq!(zeta_family(0, 0, real(-2.0 * m as f64)).unwrap().norm(), 0.0);
        }
        assert!(matches!(zeta_family(1, 2, real(3.0)), Err(Error::Pole { .. })));

        let odd = ZetaFamilyPoint::new(1, 1, c(4.0, 0.0)).evaluate().unwrap();
        assert!(odd.warnings.contains(&Warning::OddEll { ell: 1 }));
        let inside = ZetaFamilyPoint::new(1, 2, c(4.0, 0.0)).evaluate().unwrap();
        assert!(inside.warnings.is_empty());
        let continued = ZetaFamilyPoint::new(1, 2, c(2.0, 0.0)).evaluate().unwrap();
        assert_eq!(continued.warnings, vec![Warning::AnalyticContinuation { ell: 2 }]);
    }

    #[test]
    fn hyp_form_conventions() {
        let s = c(2.7, -1.4);
        assert!(rel(zeta_family_hyp_form(0, s).unwrap(), zeta(s).unwrap()) < 1e-15);
        for q in 0..=6 {
            let plus = zeta_family_hyp_form_with(q, s, HypArgumentSign::Plus).unwrap();
            assert!(rel(plus, zeta_family(q, 0, s).unwrap()) < 1e-12, "q = {q}");
        }
        let minus = zeta_family_hyp_form(1, s).unwrap();
        assert!(rel(minus, zeta_family(1, 0, s).unwrap()) > 1e-2);
    }

    #[test]
    fn special_values_even() {
        let v = special_value_even(0, 1).unwrap();
        assert!((v.to_f64() - PI * PI / 6.0).abs() < 1e-15);
        let v = special_value_even(0, 2).unwrap();
        assert!((v.to_f64() - PI.powi(4) / 90.0).abs() < 1e-14);
        // -s/2 variant: c_1 2F1(-1, -1; 1/2; 2) pi^2 / 6 = -2 * 5 * pi^2 / 6
        let minus = special_value_even_with(1, 1, HypArgumentSign::Minus).unwrap();
        assert!((minus.to_f64() + 10.0 * PI * PI / 6.0).abs() < 1e-13);
        for q in 0..=8 {
            for m in 1..=4 {
                let closed = special_value_even(q, m).unwrap().to_f64();
                let direct = zeta_family(q, 0, real(2.0 * m as f64)).unwrap().re;
                assert!((closed - direct).abs() <= 1e-12 * direct.abs().max(1.0), "q = {q}, m = {m}");
            }
        }
        assert!(special_value_even(0, 0).is_err());
    }

    #[test]
    fn special_values_negative() {
        assert!((special_value_neg(0, 1).to_f64() + 1.0 / 12.0).abs() < 1e-16);
        assert_eq!(special_value_neg(0, 0).to_f64(), -0.5);
        for m in 1..=5 {
            assert_eq!(special_value_neg(0, 2 * m).to_f64(), 0.0);
        }
        for q in 0..=10 {
            let closed = special_value_neg(q, 0).to_f64();
            let direct = zeta_family(q, 0, real(0.0)).unwrap().re;
            assert!((closed - direct).abs() <= 1e-12 * direct.abs().max(1.0), "q = {q}");
            for n in 1..=5 {
                let closed = special_value_neg(q, n).to_f64();
                let direct = zeta_family(q, 0, real(-(n as f64))).unwrap().re;
                assert!((closed - direct).abs() <= 1e-11 * direct.abs().max(1.0), "q = {q}, n = {n}");
            }
        }
    }

    #[test]
    fn family_derivative() {
        let d = zeta_family_deriv(0, real(0.0)).unwrap();
        assert!((d.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-13);
        let d = zeta_family_deriv(0, real(-2.0)).unwrap();
        let expected = -zeta(real(3.0)).unwrap().re / (4.0 * PI * PI);
        assert!((d.re - expected).abs() < 1e-14);
        for q in 0..=6 {
            let s = real(3.0);
            let h = 1e-6;
            let fd = (zeta_family(q, 0, s + h).unwrap() - zeta_family(q, 0, s - h).unwrap()) / (2.0 * h);
            let d = zeta_family_deriv(q, s).unwrap();
            assert!(rel(d, fd) < 1e-5, "q = {q}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn completed_zeta_is_symmetric(re in -25.0f64..25.0, im in -25.0f64..25.0) {
            let s = c(re, im);
            prop_assume!(s.norm() <= 30.0);
            prop_assume!(s.norm() > 0.1 && (s - 1.0).norm() > 0.1);
            prop_assume!(im.abs() > 0.1 || (re - re.round()).abs() > 0.1);
            let a = completed_zeta(s).unwrap();
            let b = completed_zeta(1.0 - s).unwrap();
            prop_assert!(rel(a, b) < 1e-10, "s = {}: {} vs {}", s, a, b);
        }

        #[test]
        fn matches_euler_maclaurin(re in 0.0f64..6.0, im in -50.0f64..50.0) {
            let s = c(re, im);
            prop_assume!((s - 1.0).norm() > 0.05);
            let got = zeta(s).unwrap();
            let oracle = zeta_euler_maclaurin(s);
            prop_assert!((got - oracle).norm() <= 1e-12 * oracle.norm().max(1.0), "s = {}", s);
        }

        #[test]
        fn derivative_matches_central_difference(re in -5.0f64..6.0, im in -30.0f64..30.0) {
            let s = c(re, im);
            prop_assume!((s - 1.0).norm() > 0.2);
            let h = 1e-5;
            let fd = (zeta(s + h).unwrap() - zeta(s - h).unwrap()) / (2.0 * h);
            let d = zeta_deriv(s).unwrap();
            prop_assert!((d - fd).norm() <= 1e-6 * d.norm().max(1.0), "s = {}: {} vs {}", s, d, fd);
        }
    }
}
