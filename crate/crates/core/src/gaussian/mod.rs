//! Gaussian channel model and its secrecy-capacity bounds.

pub mod bounds;
pub mod model;

pub use bounds::{
    c12_zero_bound_value, c12_zero_bounds, c12_zero_bounds_with, c12_zero_condition, full_cooperation_capacity,
    full_cooperation_capacity_with, lower_bound, lower_bound_value, lower_bound_value_with, lower_bound_with,
    upper_bound, upper_bound_value, upper_bound_with, BoundReport, BoundSettings, C12ZeroBounds, HelperNoiseCredit,
    LowerBoundParams, PowerSplit,
};
pub use model::{compile_geometry, path_loss_gain, Conference, GaussianMacChannel, NetworkGeometry, Point2};
