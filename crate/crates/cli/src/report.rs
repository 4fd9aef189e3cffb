//! Persisted output documents. Every number is rounded to 9 significant digits.

use serde::{Deserialize, Serialize};

use secmac::dm::{Frontier, RateEquivocationPoint};
use secmac::format::round_sig;
use secmac::gaussian::{BoundReport, C12ZeroBounds};

use crate::config::{BoundSide, C12};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSplitJson {
    pub noise_power_w: f64,
    pub conf_power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub value: f64,
    pub raw_value: f64,
    pub argmax: Vec<f64>,
    pub power_split: Option<PowerSplitJson>,
}

impl From<&BoundReport<f64>> for BoundJson {
    fn from(r: &BoundReport<f64>) -> Self {
        Self {
            value: round_sig(r.value),
            raw_value: round_sig(r.raw_value),
            argmax: r.argmax.iter().map(|&x| round_sig(x)).collect(),
            power_split: r.power_split.map(|p| PowerSplitJson {
                noise_power_w: round_sig(p.noise_power),
                conf_power_w: round_sig(p.conf_power),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub c12: C12,
    pub noise_credit: String,
    pub lower: BoundJson,
    pub upper: BoundJson,
    pub wiretap_baseline_bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C12ZeroJson {
    pub upper: BoundJson,
    pub lower: BoundJson,
    pub coincide: bool,
    pub capacity: Option<f64>,
}

impl From<&C12ZeroBounds<f64>> for C12ZeroJson {
    fn from(b: &C12ZeroBounds<f64>) -> Self {
        Self {
            upper: (&b.upper).into(),
            lower: (&b.lower).into(),
            coincide: b.coincide,
            capacity: b.capacity().map(round_sig),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub c12_zero: C12ZeroJson,
    pub full_cooperation: BoundJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub r: f64,
    pub re: f64,
}

impl From<&RateEquivocationPoint<f64>> for PointJson {
    fn from(p: &RateEquivocationPoint<f64>) -> Self {
        Self {
            r: round_sig(p.r),
            re: round_sig(p.re),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmPointReport {
    pub bound: BoundSide,
    pub c12: C12,
    pub noise_credit: String,
    pub point: PointJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CardsJson {
    pub n_u: usize,
    pub n_v: usize,
    pub n_v1: usize,
    pub n_v2: usize,
    pub identity_prefix: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmFrontierReport {
    pub bound: BoundSide,
    /// "lattice-certified lower envelope" or "lattice-restricted upper envelope".
    pub envelope: String,
    pub c12: C12,
    pub noise_credit: String,
    pub cards: CardsJson,
    pub denominator: u32,
    pub lattice_size: u64,
    pub budget: u64,
    pub truncated: bool,
    pub max_re: f64,
    pub points: Vec<PointJson>,
    pub hull: Vec<PointJson>,
}

impl DmFrontierReport {
    pub fn envelope_label(side: BoundSide) -> &'static str {
        match side {
            BoundSide::Inner => "lattice-certified lower envelope",
            BoundSide::Outer => "lattice-restricted upper envelope",
        }
    }

    pub fn points_of(f: &Frontier<f64>) -> (Vec<PointJson>, Vec<PointJson>) {
        (
            f.points.iter().map(Into::into).collect(),
            f.hull.iter().map(Into::into).collect(),
        )
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
