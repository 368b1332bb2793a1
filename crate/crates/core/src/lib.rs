//! Hermite-theta zeta functions and integral representations of the Riemann
//! xi function.

pub mod error;
pub mod hyper;
mod numeric;
pub mod quadrature;
pub mod special;
pub mod theta;
pub mod verify;
pub mod xi;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result, Warning};
pub use num_complex::Complex64;
pub use numeric::CompensatedSum;
