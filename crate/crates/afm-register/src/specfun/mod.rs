//! Transcendental functions needed by the closed forms: J0, Y0, K0,
//! complex E1 and the si/ci pair. Each has two independent evaluators
//! joined at a fixed crossover; all return tagged domain errors.

pub mod bessel;
pub mod expint;
pub mod sici;

pub use bessel::{bessel_j0, bessel_k0, bessel_y0};
pub use expint::{ein, exp_integral_e1, exp_integral_e1_real};
pub use sici::{cos_integral_ci, sin_integral_si};
