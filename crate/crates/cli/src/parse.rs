use num_complex::Complex64;

/// Parses `re,im` (or a bare real number) into a complex value.
pub fn complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("invalid number {p:?} in {text:?}"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im but got {text:?}")),
    }
}

/// Split-point list: comma-separated reals, or `re,im` pairs separated by `;`.
pub fn b_list(text: &str) -> Result<Vec<Complex64>, String> {
    if text.contains(';') {
        text.split(';').map(complex).collect()
    } else {
        text.split(',').map(|p| complex(p.trim())).collect()
    }
}

/// Inclusive grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, String> {
        if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || !step.is_finite() || stop < start {
            return Err(format!("invalid range {start}:{stop}:{step}"));
        }
        Ok(Self { start, stop, step })
    }

    /// Points `start + k step` up to and including `stop` (within rounding).
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

pub fn range(text: &str) -> Result<Range, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected start:stop:step but got {text:?}"));
    };
    let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("invalid number {p:?} in {text:?}"));
    Range::new(num(a)?, num(b)?, num(c)?)
}
