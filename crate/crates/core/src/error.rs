use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: Complex64 },

    #[error("{function} overflows the representable range at {at}")]
    Overflow { function: &'static str, at: Complex64 },

    #[error("domain error in {function}: {reason}")]
    Domain { function: &'static str, reason: String },

    #[error(
        "series did not converge after {terms} terms (tail bound {tail_bound:e} > tolerance {tolerance:e})"
    )]
    Convergence {
        terms: usize,
        tail_bound: f64,
        tolerance: f64,
    },

    #[error("quadrature tolerance not met: estimate {achieved:e} > requested {requested:e} (value {value})")]
    ToleranceNotMet {
        value: Complex64,
        achieved: f64,
        requested: f64,
    },

    #[error("form (ii) requires |b| = 1, got |b| = {modulus}")]
    Form { modulus: f64 },

    #[error("critical-line zero count mismatch for q = {q}: found {found}, expected {expected}")]
    CountMismatch {
        q: u32,
        found: usize,
        expected: usize,
    },
}

impl Error {
    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }

    /// True for failures caused by a tolerance that could not be met, as
    /// opposed to invalid arguments.
    pub fn is_tolerance_failure(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. } | Error::ToleranceNotMet { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal diagnostics attached to a result.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Double precision is outside its documented validity range for this degree.
    Precision { q: u32, detail: String },
    /// `zeta_family` was evaluated with odd `ell`, outside the theorem's parity hypothesis.
    OddEll { ell: u32 },
    /// Evaluated outside the half-plane of absolute convergence.
    AnalyticContinuation { ell: u32 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Precision { q, detail } => write!(f, "PrecisionWarning(q={q}): {detail}"),
            Warning::OddEll { ell } => write!(
                f,
                "odd ell = {ell}: unverified by theorem hypotheses (n + ell must be even)"
            ),
            Warning::AnalyticContinuation { ell } => {
                write!(f, "Re s <= 1 + {ell}: value given by analytic continuation")
            }
        }
    }
}
