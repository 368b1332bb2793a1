//! Scalar special functions consumed by the rest of the crate.

mod combinatorics;
mod gamma;
mod hermite;

pub use combinatorics::{
    bernoulli, double_factorial, factorial, factorial_f64, pochhammer, pochhammer_exact,
    rational_to_f64, stirling_first_row, stirling_first_unsigned,
};
pub use gamma::{cos_pi, digamma, gamma, gamma_real, ln_gamma, sin_pi, POLE_TOLERANCE};
pub use hermite::{hermite, hermite_complex, hermite_envelope, hermite_scaled};
