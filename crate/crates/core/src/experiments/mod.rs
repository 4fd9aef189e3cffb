//! Encoder-2 location sweeps over the Gaussian bounds.

pub mod svg;
pub mod sweep;

pub use svg::{bounds_svg, power_svg};
pub use sweep::{
    in_near_destination_window, power_split_report, run_sweep, to_csv, wiretap_baseline, PowerSplitRow, SweepConfig,
    SweepRow, CSV_HEADER, NEAR_DESTINATION_THRESHOLD, NEAR_DESTINATION_WINDOW,
};
