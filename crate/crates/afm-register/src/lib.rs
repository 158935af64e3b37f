//! Numerical model of a nuclear-spin quantum register embedded in an
//! easy-axis antiferromagnet placed in an inhomogeneous magnetic field.
//!
//! All quantities are dimensionless (fields in units of the exchange
//! field, energies in units of ħω_E, time τ = ω_E t). The numerical core
//! is generic over the scalar type; [`f64`] aliases are provided below.

pub mod error;
pub mod quadrature;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub mod afr;
pub mod coupling;
pub mod decoherence;
pub mod entanglement;
pub mod model;

pub use model::{ModelParams, QubitPairGeometry, Regime};

pub type ModelParams64 = model::ModelParams<f64>;
pub type Geometry64 = model::QubitPairGeometry<f64>;
pub type Drive64 = afr::DriveParams<f64>;
pub type ModelParams32 = model::ModelParams<f32>;
pub type Geometry32 = model::QubitPairGeometry<f32>;
pub type Drive32 = afr::DriveParams<f32>;
