//! Globally adaptive Gauss-Kronrod (G10/K21) quadrature for complex-valued
//! integrands on real intervals.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{is_finite, CompensatedSum};

/// Kronrod abscissae on [0, 1]; odd indices are the Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_124_753,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for `XGK[1], XGK[3], ..., XGK[9]`.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Length of the integrated part of each infinite range; beyond it an
    /// analytic tail or bound takes over.
    pub ray_cutoff: f64,
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize, ray_cutoff: f64) -> Result<Self> {
        let bad = |what: &str, v: f64| {
            Err(Error::domain("QuadratureConfig", format!("{what} = {v} is invalid")))
        };
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return bad("abs_tol", abs_tol);
        }
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return bad("rel_tol", rel_tol);
        }
        if max_subdivisions == 0 {
            return bad("max_subdivisions", 0.0);
        }
        if !(ray_cutoff >= 2.0) || !ray_cutoff.is_finite() {
            return bad("ray_cutoff", ray_cutoff);
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
            ray_cutoff,
        })
    }

    pub fn with_tolerances(self, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        Self::new(abs_tol, rel_tol, self.max_subdivisions, self.ray_cutoff)
    }

    /// Error allowance for a value of the given magnitude.
    pub fn allowance(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            ray_cutoff: 12.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub subdivisions_used: usize,
}

impl QuadratureResult {
    /// Sum of two independent estimates; errors add.
    pub(crate) fn plus(self, other: Self, weight: Complex64) -> Self {
        Self {
            value: self.value + weight * other.value,
            err_estimate: self.err_estimate + weight.norm() * other.err_estimate,
            subdivisions_used: self.subdivisions_used + other.subdivisions_used,
        }
    }

    pub(crate) fn shifted(self, offset: Complex64, offset_err: f64) -> Self {
        Self {
            value: self.value + offset,
            err_estimate: self.err_estimate + offset_err,
            ..self
        }
    }

    /// Fails with `ToleranceNotMet` when the estimate exceeds the allowance.
    pub fn checked(self, qc: &QuadratureConfig) -> Result<Self> {
        let requested = qc.allowance(self.value.norm());
        if !(self.err_estimate <= requested) || !is_finite(self.value) {
            return Err(Error::ToleranceNotMet {
                value: self.value,
                achieved: self.err_estimate,
                requested,
            });
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut k = fc * WGK[10];
    let mut g = Complex64::new(0.0, 0.0);
    for i in 0..10 {
        let dx = half * XGK[i];
        let pair = f(center - dx)? + f(center + dx)?;
        k += pair * WGK[i];
        if i % 2 == 1 {
            g += pair * WG[i / 2];
        }
    }
    let value = k * half;
    let err = ((k - g) * half).norm();
    if !is_finite(value) {
        return Err(Error::Overflow {
            function: "quadrature",
            at: Complex64::new(center, 0.0),
        });
    }
    Ok(Panel { a, b, value, err })
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, starting from the given
/// partition and bisecting the panel with the largest error estimate until
/// `abs_tol` or `rel_tol * |value|` is met or the panel budget runs out.
///
/// The result is not checked against the tolerance; see
/// [`QuadratureResult::checked`].
pub fn integrate<F>(
    mut f: F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if breaks.len() < 2 {
        return Err(Error::domain("integrate", "need at least one interval"));
    }
    let mut panels = Vec::with_capacity(breaks.len() + 16);
    for w in breaks.windows(2) {
        panels.push(kronrod(&mut f, w[0], w[1])?);
    }
    let mut subdivisions = 0;
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) || subdivisions >= max_subdivisions {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("non-empty");
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            break;
        }
        panels[worst] = kronrod(&mut f, p.a, mid)?;
        panels.push(kronrod(&mut f, mid, p.b)?);
        subdivisions += 1;
    }
    let mut acc = CompensatedSum::new();
    acc.extend(panels.iter().map(|p| p.value));
    Ok(QuadratureResult {
        value: acc.value(),
        err_estimate: panels.iter().map(|p| p.err).sum(),
        subdivisions_used: subdivisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{c, real};

    #[test]
    fn rule_constants() {
        let kronrod_sum = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((kronrod_sum - 2.0).abs() < 1e-15);
        assert!((2.0 * WG.iter().sum::<f64>() - 2.0).abs() < 1e-15);
        // Gauss nodes are roots of P_10
        for i in (1..10).step_by(2) {
            let x = XGK[i];
            let (mut p0, mut p1) = (1.0, x);
            for n in 1..10 {
                let p2 = ((2 * n + 1) as f64 * x * p1 - n as f64 * p0) / (n + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            assert!(p1.abs() < 1e-14, "node {x}");
        }
    }

    #[test]
    fn polynomial_exactness() {
        for degree in 0..=31u32 {
            let mut f = |x: f64| Ok(real(x.powi(degree as i32)));
            let p = kronrod(&mut f, 0.0, 1.0).unwrap();
            let exact = 1.0 / (degree + 1) as f64;
            assert!((p.value.re - exact).abs() < 1e-15, "degree {degree}");
            if degree <= 19 {
                // embedded Gauss rule is exact too, so the estimate collapses
                assert!(p.err < 1e-15, "degree {degree}");
            }
        }
    }

    #[test]
    fn smooth_oscillatory() {
        let r = integrate(|x| Ok(c(0.0, x).exp()), &[0.0, 10.0], 1e-13, 1e-13, 100).unwrap();
        let exact = (c(0.0, 10.0).exp() - 1.0) / c(0.0, 1.0);
        assert!((r.value - exact).norm() < 1e-13);
        assert!(r.err_estimate < 1e-13);
    }

    #[test]
    fn endpoint_singularity_refines() {
        let r = integrate(|x| Ok(real(x.sqrt())), &[0.0, 1.0], 1e-12, 1e-12, 200).unwrap();
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.subdivisions_used > 0);
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let qc = QuadratureConfig::new(1e-14, 1e-14, 1, 12.0).unwrap();
        let r = integrate(|x| Ok(real(x.abs().sqrt())), &[-1.0, 1.0], qc.abs_tol, qc.rel_tol, 1).unwrap();
        let err = r.checked(&qc).unwrap_err();
        assert!(matches!(err, Error::ToleranceNotMet { .. }));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0.0, 1e-10, 10, 12.0).is_err());
        assert!(QuadratureConfig::new(1e-10, -1.0, 10, 12.0).is_err());
        assert!(QuadratureConfig::new(1e-10, 1e-10, 0, 12.0).is_err());
        assert!(QuadratureConfig::new(1e-10, 1e-10, 10, 1.0).is_err());
        assert!(QuadratureConfig::new(1e-10, 1e-10, 10, 2.0).is_ok());
    }

    #[test]
    fn integrand_errors_propagate() {
        let r = integrate(|_| Err(Error::domain("f", "boom")), &[0.0, 1.0], 1e-10, 1e-10, 10);
        assert!(matches!(r, Err(Error::Domain { .. })));
    }
}
