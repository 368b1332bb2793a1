//! Complex gamma and digamma.
//!
//! `gamma` uses a Lanczos approximation (g = 607/128, fifteen coefficients) in the
//! half-plane `Re s >= 1/2` and the reflection formula below it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distance from a non-positive integer at which gamma/digamma report a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

// ln(2*pi)/2
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn near_nonpositive_integer(s: Complex64) -> bool {
    let n = s.re.round();
    n <= 0.0 && (s - Complex64::new(n, 0.0)).norm() < POLE_TOLERANCE
}

/// `sin(pi z)` with the real part reduced to `[-1/2, 1/2]` first, so the
/// result keeps full relative accuracy near the integers.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let v = (r * PI).sin();
    if n.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

/// `cos(pi z)` with the same argument reduction as [`sin_pi`].
pub fn cos_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let v = (r * PI).cos();
    if n.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

/// Lanczos series for `ln Gamma(z)`, valid for `Re z >= 1/2`.
fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_TWO_PI + acc.ln()
}

/// A logarithm of `Gamma(s)`: `exp(ln_gamma(s)) == Gamma(s)`, but the
/// imaginary part is not normalised to the principal branch.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(s) {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: s,
        });
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_lanczos(s))
    } else {
        let one_minus = Complex64::new(1.0, 0.0) - s;
        Ok(Complex64::new(PI.ln(), 0.0) - sin_pi(s).ln() - ln_gamma_lanczos(one_minus))
    }
}

/// Complex gamma function.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(s) {
        return Err(Error::Pole {
            function: "gamma",
            at: s,
        });
    }
    let value = if s.re >= 0.5 {
        let lg = ln_gamma_lanczos(s);
        if lg.re > f64::MAX.ln() {
            return Err(Error::Overflow {
                function: "gamma",
                at: s,
            });
        }
        lg.exp()
    } else {
        // Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
        let one_minus = Complex64::new(1.0, 0.0) - s;
        let lg = ln_gamma_lanczos(one_minus);
        let denom_log = sin_pi(s).ln() + lg;
        let log_value = Complex64::new(PI.ln(), 0.0) - denom_log;
        if log_value.re > f64::MAX.ln() {
            return Err(Error::Overflow {
                function: "gamma",
                at: s,
            });
        }
        PI / (sin_pi(s) * lg.exp())
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow {
            function: "gamma",
            at: s,
        });
    }
    Ok(value)
}

/// Real gamma function; convenience wrapper over [`gamma`].
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|z| z.re)
}

// B_{2k} / (2k) for k = 1..8
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Digamma `psi(s) = Gamma'(s) / Gamma(s)`.
pub fn digamma(s: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(s) {
        return Err(Error::Pole {
            function: "digamma",
            at: s,
        });
    }
    if s.re < 0.5 {
        // psi(s) = psi(1 - s) - pi cot(pi s)
        let one_minus = Complex64::new(1.0, 0.0) - s;
        let cot = cos_pi(s) / sin_pi(s);
        return Ok(digamma(one_minus)? - PI * cot);
    }

    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 10.0 {
        shift -= z.inv();
        z += 1.0;
    }

    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for &c in &DIGAMMA_ASYMPTOTIC {
        series += c * power;
        power *= inv2;
    }
    Ok(shift + z.ln() - 0.5 * inv - series)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    /// Independent route: shift the argument up by recurrence, then use the
    /// Stirling series for ln Gamma at large |z|.
    fn gamma_stirling(s: Complex64) -> Complex64 {
        let mut z = s;
        let mut log_prod = c(0.0, 0.0);
        while z.re < 30.0 {
            log_prod += z.ln();
            z += 1.0;
        }
        let inv = z.inv();
        let inv2 = inv * inv;
        // B_{2k} / (2k (2k - 1))
        let coeffs = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360360.0,
            1.0 / 156.0,
        ];
        let mut series = c(0.0, 0.0);
        let mut power = inv;
        for k in coeffs {
            series += k * power;
            power *= inv2;
        }
        let ln_g = (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series;
        (ln_g - log_prod).exp()
    }

    #[test]
    fn classical_values() {
        assert!((gamma(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(6.0).unwrap() - 120.0).abs() < 1e-11);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn matches_arbitrary_precision_reference() {
        // Reference values from a 40-digit evaluation.
        let cases = [
            (c(0.5, 14.13), c(-1.5258284441817669494e-10, -5.5452733644374885475e-10)),
            (c(3.0, 40.0), c(-1.5869609984514763633e-24, -1.300714980038894281e-23)),
            (c(-2.5, 1.0), c(-0.041736625807893613745, -0.086369107369763484694)),
            (c(0.25, -7.0), c(0.00002582003509403341808, 1.3703869497676168475e-6)),
            (c(20.0, 0.5), c(10319175803074680.73, 120426764288224852.22)),
            (c(-10.3, 3.0), c(-5.006195173000388142e-12, -1.0354057548010868665e-10)),
        ];
        for (s, expected) in cases {
            let got = gamma(s).unwrap();
            assert!(rel(got, expected) < 1e-13, "s = {s}: {got} vs {expected}");
        }
    }

    #[test]
    fn agrees_with_stirling_oracle_on_critical_line() {
        let s = c(0.5, 14.13);
        assert!(rel(gamma(s).unwrap(), gamma_stirling(s)) < 1e-12);
        for t in [0.3, 5.0, 22.0, 49.0] {
            let s = c(0.5, t);
            assert!(rel(gamma(s).unwrap(), gamma_stirling(s)) < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn poles_are_reported() {
        for n in 0..5 {
            let s = c(-(n as f64), 0.0);
            assert!(matches!(gamma(s), Err(Error::Pole { .. })));
            assert!(matches!(digamma(s), Err(Error::Pole { .. })));
        }
        assert!(matches!(gamma(c(-3.0 + 5e-13, 0.0)), Err(Error::Pole { .. })));
        assert!(gamma(c(-3.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(gamma(c(180.0, 0.0)), Err(Error::Overflow { .. })));
        assert!(gamma(c(170.0, 0.0)).is_ok());
    }

    #[test]
    fn digamma_values() {
        let d1 = digamma(c(1.0, 0.0)).unwrap();
        let d2 = digamma(c(2.0, 0.0)).unwrap();
        assert!((d2 - d1 - 1.0).norm() < 1e-14);

        // Oracle: psi(1) = lim (H_n - ln n); accelerate with the 1/(2n) correction.
        let n = 100_000u32;
        let harmonic: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        let oracle = -(harmonic - (n as f64).ln() - 0.5 / n as f64 + 1.0 / (12.0 * (n as f64).powi(2)));
        assert!((d1.re - oracle).abs() < 1e-13, "{} vs {}", d1.re, oracle);
        assert!((d1.re + EULER_GAMMA).abs() < 1e-14);

        // Duplication psi(2z) = psi(z)/2 + psi(z + 1/2)/2 + ln 2 at z = 1/2.
        let half = digamma(c(0.5, 0.0)).unwrap();
        let via_duplication = d1 - 2.0 * 2f64.ln();
        assert!((half - via_duplication).norm() < 1e-13);
        assert!((half.re - (-EULER_GAMMA - 2.0 * 2f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn digamma_reference_values() {
        let cases = [
            (c(0.5, 3.0), c(1.0938865316788440398, 1.5707963063355506286)),
            (c(-3.7, 0.2), c(0.085426161316682423806, 2.2496477386055173901)),
            (c(12.0, -30.0), c(3.4697180597139580916, -1.2047128225175439186)),
        ];
        for (s, expected) in cases {
            let got = digamma(s).unwrap();
            assert!(rel(got, expected) < 1e-13, "s = {s}: {got} vs {expected}");
        }
    }

    #[test]
    fn digamma_recurrence() {
        for s in [c(0.3, 0.0), c(-2.4, 1.1), c(3.0, -8.0), c(0.5, 25.0)] {
            let lhs = digamma(s + 1.0).unwrap();
            let rhs = digamma(s).unwrap() + s.inv();
            assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn ln_gamma_exponentiates_to_gamma() {
        for s in [c(0.7, 3.0), c(-4.2, 0.5), c(12.0, -20.0)] {
            let via_log = ln_gamma(s).unwrap().exp();
            assert!(rel(via_log, gamma(s).unwrap()) < 1e-13);
        }
    }
}
