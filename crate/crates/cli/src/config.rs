//! JSON input schema.

use std::fmt;

use anyhow::{bail, Context, Result};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use secmac::dm::{AuxCards, DiscreteMemorylessChannel, InnerAuxDistribution, LatticeSpec, OuterAuxDistribution};
use secmac::experiments::SweepConfig;
use secmac::gaussian::{self, GaussianMacChannel, NetworkGeometry, Point2};

/// Conferencing capacity as written in JSON: a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C12(pub gaussian::Conference<f64>);

impl Default for C12 {
    fn default() -> Self {
        C12(gaussian::Conference::Finite(0.0))
    }
}

impl Serialize for C12 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            gaussian::Conference::Finite(c) => s.serialize_f64(secmac::format::round_sig(c)),
            gaussian::Conference::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for C12 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = C12;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("c12 as a nonnegative number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<C12, E> {
                if v >= 0.0 && v.is_finite() {
                    Ok(C12(gaussian::Conference::Finite(v)))
                } else {
                    Err(E::custom(format!("c12 must be nonnegative, got {v}")))
                }
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<C12, E> {
                self.visit_f64(v as f64)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<C12, E> {
                self.visit_f64(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<C12, E> {
                if v == "inf" {
                    Ok(C12(gaussian::Conference::Infinite))
                } else {
                    Err(E::custom(format!("c12 must be a number or \"inf\", got {v:?}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Config {
    Channel(ChannelSpec),
    Geometry(GeometrySpec),
    DmChannel(DmSpec),
}

#[derive(Debug, Clone, Deserialize)]
pub struct ChannelSpec {
    pub h1d: f64,
    pub h2d: f64,
    pub h1e: f64,
    pub h2e: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub p1: f64,
    pub p2: f64,
    #[serde(default)]
    pub c12: C12,
}

fn default_gamma() -> f64 {
    2.0
}

fn default_min_distance() -> f64 {
    NetworkGeometry::<f64>::DEFAULT_MIN_DISTANCE
}

#[derive(Debug, Clone, Deserialize)]
pub struct GeometrySpec {
    pub enc1: [f64; 2],
    pub enc2: [f64; 2],
    pub dest: [f64; 2],
    pub eave: [f64; 2],
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    pub p1: f64,
    pub p2: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    #[serde(default)]
    pub c12: C12,
    #[serde(default = "default_min_distance")]
    pub min_distance: f64,
    pub sweep: Option<SweepSpec>,
}

fn default_stop() -> f64 {
    2.0
}

fn default_step() -> f64 {
    0.05
}

fn default_c12_list() -> Vec<C12> {
    [0.0, 1.0, 4.0, 6.0]
        .iter()
        .map(|&c| C12(gaussian::Conference::Finite(c)))
        .collect()
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
pub struct SweepSpec {
    #[serde(default)]
    pub start: f64,
    #[serde(default = "default_stop")]
    pub stop: f64,
    #[serde(default = "default_step")]
    pub step: f64,
    #[serde(default = "default_c12_list")]
    pub c12_list: Vec<C12>,
    #[serde(default = "yes")]
    pub include_wiretap_baseline: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: default_stop(),
            step: default_step(),
            c12_list: default_c12_list(),
            include_wiretap_baseline: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSide {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct CardsSpec {
    pub n_u: Option<usize>,
    pub n_v: Option<usize>,
    pub n_v1: Option<usize>,
    pub n_v2: Option<usize>,
    #[serde(default)]
    pub identity_prefix: bool,
}

fn default_grid_step() -> f64 {
    0.125
}

fn default_budget() -> u64 {
    LatticeSpec::DEFAULT_BUDGET
}

#[derive(Debug, Clone, Deserialize)]
pub struct DmSpec {
    pub n_x1: usize,
    pub n_x2: usize,
    pub n_y: usize,
    pub n_z: usize,
    /// `law[x1][x2][y][z] = p(y, z | x1, x2)`.
    pub law: Vec<Vec<Vec<Vec<f64>>>>,
    #[serde(default)]
    pub c12: C12,
    #[serde(default)]
    pub cards: CardsSpec,
    #[serde(default = "default_grid_step")]
    pub grid_step: f64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    pub bound: Option<BoundSide>,
    pub inner_distribution: Option<InnerDistSpec>,
    pub outer_distribution: Option<OuterDistSpec>,
}

/// Conditional tables as lists of rows; rows of `p_v1`, `p_v2` are ordered by `(u, v)`.
#[derive(Debug, Clone, Deserialize)]
pub struct InnerDistSpec {
    pub p_u: Vec<f64>,
    pub p_v: Vec<Vec<f64>>,
    pub p_v1: Vec<Vec<f64>>,
    pub p_v2: Vec<Vec<f64>>,
    pub p_x1: Vec<Vec<f64>>,
    pub p_x2: Vec<Vec<f64>>,
}

/// `p_v1v2[u][v1][v2]` and `p_x1x2[v1][v2][x1][x2]`.
#[derive(Debug, Clone, Deserialize)]
pub struct OuterDistSpec {
    pub p_u: Vec<f64>,
    pub p_v1v2: Vec<Vec<Vec<f64>>>,
    pub p_x1x2: Vec<Vec<Vec<Vec<f64>>>>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| SchemaError(format!("invalid config: {e}")).into())
    }
}

/// Input that violates the schema; maps to exit code 2.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SchemaError {}

fn schema(msg: String) -> anyhow::Error {
    SchemaError(msg).into()
}

impl ChannelSpec {
    pub fn to_channel(&self) -> Result<GaussianMacChannel<f64>> {
        let ch = GaussianMacChannel {
            h1d: self.h1d,
            h2d: self.h2d,
            h1e: self.h1e,
            h2e: self.h2e,
            sigma1_sq: self.sigma1_sq,
            sigma2_sq: self.sigma2_sq,
            p1: self.p1,
            p2: self.p2,
            c12: self.c12.0,
        };
        ch.validate()?;
        Ok(ch)
    }
}

impl GeometrySpec {
    pub fn to_geometry(&self) -> Result<NetworkGeometry<f64>> {
        let p = |a: [f64; 2]| Point2::new(a[0], a[1]);
        let g = NetworkGeometry {
            pos_enc1: p(self.enc1),
            pos_enc2: p(self.enc2),
            pos_dest: p(self.dest),
            pos_eave: p(self.eave),
            gamma: self.gamma,
            p1: self.p1,
            p2: self.p2,
            sigma1_sq: self.sigma1_sq,
            sigma2_sq: self.sigma2_sq,
            c12: self.c12.0,
            min_distance: self.min_distance,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn to_sweep(&self) -> Result<SweepConfig<f64>> {
        let s = self.sweep.clone().unwrap_or_default();
        if !(s.step > 0.0) {
            return Err(schema(format!("sweep.step must be positive, got {}", s.step)));
        }
        if !(s.start <= s.stop) {
            return Err(schema(format!(
                "sweep.stop ({}) must be >= sweep.start ({})",
                s.stop, s.start
            )));
        }
        if s.c12_list.is_empty() {
            return Err(schema("sweep.c12_list must not be empty".into()));
        }
        let mut cfg = SweepConfig::new(self.to_geometry()?)
            .with_range(s.start, s.stop, s.step)
            .with_c12_list(s.c12_list.iter().map(|c| c.0).collect());
        cfg.include_wiretap_baseline = s.include_wiretap_baseline;
        Ok(cfg)
    }
}

impl DmSpec {
    pub fn to_channel(&self) -> Result<DiscreteMemorylessChannel<f64>> {
        let shape_err = |what: String| schema(format!("law: {what}"));
        if self.law.len() != self.n_x1 {
            return Err(shape_err(format!(
                "expected {} x1 blocks, got {}",
                self.n_x1,
                self.law.len()
            )));
        }
        let mut flat = Vec::with_capacity(self.n_x1 * self.n_x2 * self.n_y * self.n_z);
        for (x1, a) in self.law.iter().enumerate() {
            if a.len() != self.n_x2 {
                return Err(shape_err(format!(
                    "law[{x1}] has {} x2 blocks, expected {}",
                    a.len(),
                    self.n_x2
                )));
            }
            for (x2, b) in a.iter().enumerate() {
                if b.len() != self.n_y {
                    return Err(shape_err(format!(
                        "law[{x1}][{x2}] has {} y rows, expected {}",
                        b.len(),
                        self.n_y
                    )));
                }
                for (y, c) in b.iter().enumerate() {
                    if c.len() != self.n_z {
                        return Err(shape_err(format!(
                            "law[{x1}][{x2}][{y}] has {} z entries, expected {}",
                            c.len(),
                            self.n_z
                        )));
                    }
                    flat.extend_from_slice(c);
                }
            }
        }
        Ok(DiscreteMemorylessChannel::new(
            self.n_x1, self.n_x2, self.n_y, self.n_z, flat,
        )?)
    }

    pub fn cards(&self, ch: &DiscreteMemorylessChannel<f64>) -> AuxCards {
        let d = if self.cards.identity_prefix {
            AuxCards::identity(ch, 2, 2)
        } else {
            AuxCards::defaults_for(ch)
        };
        AuxCards {
            n_u: self.cards.n_u.unwrap_or(d.n_u),
            n_v: self.cards.n_v.unwrap_or(d.n_v),
            n_v1: self.cards.n_v1.unwrap_or(d.n_v1),
            n_v2: self.cards.n_v2.unwrap_or(d.n_v2),
            identity_prefix: self.cards.identity_prefix,
        }
    }

    pub fn lattice(&self) -> Result<LatticeSpec> {
        Ok(LatticeSpec::from_step(self.grid_step)
            .context("grid_step")?
            .with_budget(self.budget))
    }
}

fn rows(field: &'static str, rows: &[Vec<f64>], count: usize) -> Result<(usize, Vec<f64>)> {
    if rows.len() != count {
        bail!(SchemaError(format!(
            "{field}: expected {count} rows, got {}",
            rows.len()
        )));
    }
    let width = rows.first().map_or(0, Vec::len);
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        bail!(SchemaError(format!(
            "{field}: rows must be non-empty and of equal length"
        )));
    }
    Ok((width, rows.concat()))
}

impl InnerDistSpec {
    pub fn to_distribution(&self, ch: &DiscreteMemorylessChannel<f64>) -> Result<InnerAuxDistribution<f64>> {
        let n_u = self.p_u.len();
        let (n_v, p_v) = rows("p_v", &self.p_v, n_u)?;
        let (n_v1, p_v1) = rows("p_v1", &self.p_v1, n_u * n_v)?;
        let (n_v2, p_v2) = rows("p_v2", &self.p_v2, n_u * n_v)?;
        let (n_x1, p_x1) = rows("p_x1", &self.p_x1, n_v1)?;
        let (n_x2, p_x2) = rows("p_x2", &self.p_x2, n_v2)?;
        if (n_x1, n_x2) != (ch.n_x1, ch.n_x2) {
            bail!(SchemaError(format!(
                "p_x1/p_x2: input alphabets {n_x1}x{n_x2} do not match the channel's {}x{}",
                ch.n_x1, ch.n_x2
            )));
        }
        let d = InnerAuxDistribution {
            n_u,
            n_v,
            n_v1,
            n_v2,
            n_x1,
            n_x2,
            p_u: self.p_u.clone(),
            p_v,
            p_v1,
            p_v2,
            p_x1,
            p_x2,
        };
        d.validate()?;
        Ok(d)
    }
}

impl OuterDistSpec {
    pub fn to_distribution(&self, ch: &DiscreteMemorylessChannel<f64>) -> Result<OuterAuxDistribution<f64>> {
        let n_u = self.p_u.len();
        if self.p_v1v2.len() != n_u {
            bail!(SchemaError(format!(
                "p_v1v2: expected {n_u} blocks, got {}",
                self.p_v1v2.len()
            )));
        }
        let n_v1 = self.p_v1v2[0].len();
        let n_v2 = self.p_v1v2[0].first().map_or(0, Vec::len);
        let mut p_v1v2 = Vec::new();
        for (u, block) in self.p_v1v2.iter().enumerate() {
            let (w, flat) = rows("p_v1v2", block, n_v1)?;
            if w != n_v2 {
                bail!(SchemaError(format!("p_v1v2[{u}]: rows must have {n_v2} entries")));
            }
            p_v1v2.extend(flat);
        }
        if self.p_x1x2.len() != n_v1 {
            bail!(SchemaError(format!(
                "p_x1x2: expected {n_v1} v1 blocks, got {}",
                self.p_x1x2.len()
            )));
        }
        let mut p_x1x2 = Vec::new();
        for (v1, by_v2) in self.p_x1x2.iter().enumerate() {
            if by_v2.len() != n_v2 {
                bail!(SchemaError(format!("p_x1x2[{v1}]: expected {n_v2} v2 blocks")));
            }
            for (v2, block) in by_v2.iter().enumerate() {
                let (w, flat) = rows("p_x1x2", block, ch.n_x1)?;
                if w != ch.n_x2 {
                    bail!(SchemaError(format!(
                        "p_x1x2[{v1}][{v2}]: rows must have {} entries",
                        ch.n_x2
                    )));
                }
                p_x1x2.extend(flat);
            }
        }
        let d = OuterAuxDistribution {
            n_u,
            n_v1,
            n_v2,
            n_x1: ch.n_x1,
            n_x2: ch.n_x2,
            p_u: self.p_u.clone(),
            p_v1v2,
            p_x1x2,
        };
        d.validate()?;
        Ok(d)
    }
}
