//! Secrecy bounds for the two-encoder multiple-access channel with a
//! conferencing link and a passive eavesdropper.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, with `*32` variants for single precision.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dm;
pub mod error;
pub mod experiments;
pub mod format;
pub mod gaussian;
pub mod numerics;
pub mod scalar;

pub use error::{Error, Result};
pub use gaussian::HelperNoiseCredit;
pub use scalar::Real;

pub type Conference = gaussian::Conference<f64>;
pub type GaussianMacChannel = gaussian::GaussianMacChannel<f64>;
pub type NetworkGeometry = gaussian::NetworkGeometry<f64>;
pub type BoundReport = gaussian::BoundReport<f64>;
pub type BoundSettings = gaussian::BoundSettings<f64>;
pub type GridSpec = numerics::GridSpec<f64>;
pub type DiscreteMemorylessChannel = dm::DiscreteMemorylessChannel<f64>;
pub type InnerAuxDistribution = dm::InnerAuxDistribution<f64>;
pub type OuterAuxDistribution = dm::OuterAuxDistribution<f64>;
pub type RateEquivocationPoint = dm::RateEquivocationPoint<f64>;
pub type SweepConfig = experiments::SweepConfig<f64>;
pub type SweepRow = experiments::SweepRow<f64>;

pub type GaussianMacChannel32 = gaussian::GaussianMacChannel<f32>;
pub type NetworkGeometry32 = gaussian::NetworkGeometry<f32>;
pub type DiscreteMemorylessChannel32 = dm::DiscreteMemorylessChannel<f32>;
