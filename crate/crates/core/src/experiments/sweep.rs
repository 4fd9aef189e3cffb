use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::gaussian::{
    lower_bound_with, upper_bound_with, BoundSettings, Conference, GaussianMacChannel, NetworkGeometry, Point2,
};
use crate::numerics::{cap, clamp_plus};
use crate::scalar::Real;

/// Encoder-2 location sweep along the x-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig<T> {
    /// Node layout; only the y-coordinate of encoder 2 is kept.
    pub base: NetworkGeometry<T>,
    pub start: T,
    pub stop: T,
    pub step: T,
    pub c12_list: Vec<Conference<T>>,
    pub include_wiretap_baseline: bool,
    pub settings: BoundSettings<T>,
}

impl<T: Real> SweepConfig<T> {
    /// d in [0, 2] step 0.05 with C12 in {0, 1, 4, 6} on the given layout.
    pub fn new(base: NetworkGeometry<T>) -> Self {
        Self {
            base,
            start: T::zero(),
            stop: T::lit(2.0),
            step: T::lit(0.05),
            c12_list: [0.0, 1.0, 4.0, 6.0]
                .iter()
                .map(|&c| Conference::Finite(T::lit(c)))
                .collect(),
            include_wiretap_baseline: true,
            settings: BoundSettings::default(),
        }
    }

    /// Destination at (1, 0), eavesdropper at (1.5, 0).
    pub fn reference() -> Self {
        Self::new(NetworkGeometry::reference(T::zero()))
    }

    /// Destination and eavesdropper swapped.
    pub fn reversed_reference() -> Self {
        Self::new(NetworkGeometry::reversed_reference(T::zero()))
    }

    pub fn with_range(mut self, start: T, stop: T, step: T) -> Self {
        self.start = start;
        self.stop = stop;
        self.step = step;
        self
    }

    pub fn with_c12_list(mut self, c12_list: Vec<Conference<T>>) -> Self {
        self.c12_list = c12_list;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > T::zero()) || !self.step.is_finite() {
            return Err(Error::domain("step", self.step.to_f64_lossy(), "must be positive"));
        }
        if !(self.start <= self.stop) || !self.stop.is_finite() {
            return Err(Error::domain("stop", self.stop.to_f64_lossy(), "must be >= start"));
        }
        if self.c12_list.is_empty() {
            return Err(Error::Config("c12_list must not be empty".into()));
        }
        for c in &self.c12_list {
            c.validate()?;
        }
        self.base.validate()
    }

    /// Sweep positions `start + i * step` up to `stop` inclusive.
    pub fn positions(&self) -> Vec<T> {
        let span = ((self.stop - self.start) / self.step).to_f64_lossy();
        let n = (span + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| self.start + T::from_usize_lossy(i) * self.step)
            .collect()
    }
}

/// One (position, conferencing capacity) result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub d: T,
    pub c12: Conference<T>,
    pub lower_value: T,
    pub upper_value: T,
    pub alpha_star: T,
    pub beta_star: T,
    pub noise_power: T,
    pub conf_power: T,
    /// `-1` when the baseline was not requested.
    pub wiretap_baseline: T,
}

/// Secrecy capacity of the scalar Gaussian wiretap channel from encoder 1
/// alone, with the helper silent.
pub fn wiretap_baseline<T: Real>(ch: &GaussianMacChannel<T>) -> Result<T> {
    ch.validate()?;
    let main = cap(ch.h1d * ch.h1d * ch.p1 / ch.sigma1_sq)?;
    let eave = cap(ch.h1e * ch.h1e * ch.p1 / ch.sigma2_sq)?;
    Ok(clamp_plus(main - eave))
}

fn rows_at<T: Real>(cfg: &SweepConfig<T>, c12s: &[Conference<T>], d: T) -> Result<Vec<SweepRow<T>>> {
    let geom = cfg.base.with_enc2(Point2::new(d, cfg.base.pos_enc2.y));
    let ch = geom.compile()?;
    let upper = upper_bound_with(&ch, &cfg.settings)?.value;
    let baseline = if cfg.include_wiretap_baseline {
        wiretap_baseline(&ch)?
    } else {
        -T::one()
    };
    c12s.iter()
        .map(|&c12| {
            let lower = lower_bound_with(&ch.with_c12(c12), &cfg.settings)?;
            let split = lower.power_split.expect("lower bound reports a power split");
            Ok(SweepRow {
                d,
                c12,
                lower_value: lower.value,
                upper_value: upper,
                alpha_star: lower.argmax[0],
                beta_star: lower.argmax[1],
                noise_power: split.noise_power,
                conf_power: split.conf_power,
                wiretap_baseline: baseline,
            })
        })
        .collect()
}

/// Runs every (d, C12) pair; rows are ordered by d, then C12 with the
/// infinite link last.
pub fn run_sweep<T: Real>(cfg: &SweepConfig<T>) -> Result<Vec<SweepRow<T>>> {
    cfg.validate()?;
    let mut c12s = cfg.c12_list.clone();
    c12s.sort_by(|a, b| {
        a.sort_key()
            .partial_cmp(&b.sort_key())
            .expect("validated conference values")
    });
    let per_d: Vec<Vec<SweepRow<T>>> = cfg
        .positions()
        .into_par_iter()
        .map(|d| rows_at(cfg, &c12s, d))
        .collect::<Result<_>>()?;
    Ok(per_d.into_iter().flatten().collect())
}

/// Encoder-2 power allocation for one sweep row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplitRow<T> {
    pub d: T,
    pub c12: Conference<T>,
    pub noise_power: T,
    pub conf_power: T,
    /// For 0.9 < d < 1.1: whether the conferenced power is below 5% of P2.
    pub near_destination_flag: Option<bool>,
}

pub const NEAR_DESTINATION_WINDOW: (f64, f64) = (0.9, 1.1);
pub const NEAR_DESTINATION_THRESHOLD: f64 = 0.05;

pub fn in_near_destination_window<T: Real>(d: T) -> bool {
    let d = d.to_f64_lossy();
    d > NEAR_DESTINATION_WINDOW.0 + 1e-9 && d < NEAR_DESTINATION_WINDOW.1 - 1e-9
}

pub fn power_split_report<T: Real>(rows: &[SweepRow<T>]) -> Vec<PowerSplitRow<T>> {
    rows.iter()
        .map(|r| {
            let p2 = r.noise_power + r.conf_power;
            PowerSplitRow {
                d: r.d,
                c12: r.c12,
                noise_power: r.noise_power,
                conf_power: r.conf_power,
                near_destination_flag: in_near_destination_window(r.d)
                    .then(|| r.conf_power < T::lit(NEAR_DESTINATION_THRESHOLD) * p2),
            }
        })
        .collect()
}

pub const CSV_HEADER: &str =
    "d,c12,lower_bits,upper_bits,alpha_star,beta_star,noise_power_w,conf_power_w,wiretap_baseline_bits";

pub fn to_csv<T: Real>(rows: &[SweepRow<T>]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            fmt_sig(r.d),
            r.c12.to_string(),
            fmt_sig(r.lower_value),
            fmt_sig(r.upper_value),
            fmt_sig(r.alpha_star),
            fmt_sig(r.beta_star),
            fmt_sig(r.noise_power),
            fmt_sig(r.conf_power),
            fmt_sig(r.wiretap_baseline),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
