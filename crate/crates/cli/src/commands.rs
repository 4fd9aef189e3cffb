use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use secmac::dm::{enumerate_frontier, inner_bound_point, outer_bound_point, BoundKind, LatticeSpec};
use secmac::experiments::{bounds_svg, power_split_report, power_svg, run_sweep, to_csv, wiretap_baseline};
use secmac::format::{fmt_sig, round_sig};
use secmac::gaussian::{
    c12_zero_bounds_with, full_cooperation_capacity_with, lower_bound_with, upper_bound_with, BoundSettings,
    GaussianMacChannel, HelperNoiseCredit,
};

use crate::config::{BoundSide, Config, DmSpec, SchemaError, C12};
use crate::report::{to_json, BoundsReport, CardsJson, DmFrontierReport, DmPointReport, SpecialReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Credit {
    /// Helper-noise credit capped by the sum rate.
    Capped,
    /// Helper-noise credit added to the full rate.
    Additive,
}

impl From<Credit> for HelperNoiseCredit {
    fn from(c: Credit) -> Self {
        match c {
            Credit::Capped => HelperNoiseCredit::CappedBySumRate,
            Credit::Additive => HelperNoiseCredit::Additive,
        }
    }
}

fn credit_name(c: HelperNoiseCredit) -> String {
    match c {
        HelperNoiseCredit::CappedBySumRate => "capped",
        HelperNoiseCredit::Additive => "additive",
    }
    .into()
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Prefix for written files; without it results only go to stdout.
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// Coarse grid points per dimension (Gaussian), or lattice denominator (DM).
    #[arg(long, global = true)]
    pub grid_steps: Option<usize>,
    #[arg(long, global = true)]
    pub refine_rounds: Option<usize>,
    /// Maximum number of lattice points a DM search may evaluate.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Also write line plots for sweeps.
    #[arg(long, global = true)]
    pub svg: bool,
    #[arg(long, global = true, value_enum, default_value = "capped")]
    pub noise_credit: Credit,
    /// Frontier side for dm-frontier; overrides the config's "bound".
    #[arg(long, global = true, value_enum)]
    pub bound: Option<Side>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Inner,
    Outer,
}

impl RunConfig {
    fn load(&self) -> Result<Config> {
        let Some(path) = &self.input else {
            bail!(SchemaError("--input is required".into()));
        };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Config::parse(&text)
    }

    fn settings(&self) -> BoundSettings<f64> {
        let mut s = BoundSettings {
            noise_credit: self.noise_credit.into(),
            ..BoundSettings::default()
        };
        if let Some(n) = self.grid_steps {
            s.coarse_steps = n;
        }
        if let Some(r) = self.refine_rounds {
            s.refine_rounds = r;
        }
        s
    }

    /// Prints `text` and, with `--output`, writes it to `<prefix><suffix>`.
    fn emit(&self, suffix: &str, text: &str) -> Result<()> {
        print!("{text}");
        self.write_only(suffix, text)
    }

    fn write_only(&self, suffix: &str, text: &str) -> Result<()> {
        if let Some(prefix) = &self.output {
            let path = format!("{prefix}{suffix}");
            if let Some(dir) = Path::new(&path).parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(&path, text).with_context(|| format!("writing {path}"))?;
        }
        Ok(())
    }
}

fn gaussian_channel(cfg: &Config) -> Result<GaussianMacChannel<f64>> {
    match cfg {
        Config::Channel(c) => c.to_channel(),
        Config::Geometry(g) => Ok(g.to_geometry()?.compile()?),
        Config::DmChannel(_) => bail!(SchemaError(
            "kind: expected \"channel\" or \"geometry\", got \"dm_channel\"".into()
        )),
    }
}

fn dm_spec(cfg: &Config) -> Result<&DmSpec> {
    match cfg {
        Config::DmChannel(d) => Ok(d),
        _ => bail!(SchemaError("kind: expected \"dm_channel\"".into())),
    }
}

pub fn bounds(run: &RunConfig) -> Result<()> {
    let cfg = run.load()?;
    let ch = gaussian_channel(&cfg)?;
    let s = run.settings();
    let report = BoundsReport {
        c12: C12(ch.c12),
        noise_credit: credit_name(s.noise_credit),
        lower: (&lower_bound_with(&ch, &s)?).into(),
        upper: (&upper_bound_with(&ch, &s)?).into(),
        wiretap_baseline_bits: round_sig(wiretap_baseline(&ch)?),
    };
    run.emit("_bounds.json", &to_json(&report))
}

pub fn special(run: &RunConfig) -> Result<()> {
    let cfg = run.load()?;
    let ch = gaussian_channel(&cfg)?;
    let s = run.settings();
    let report = SpecialReport {
        c12_zero: (&c12_zero_bounds_with(&ch, &s)?).into(),
        full_cooperation: (&full_cooperation_capacity_with(&ch, &s)?).into(),
    };
    run.emit("_special.json", &to_json(&report))
}

pub fn sweep(run: &RunConfig) -> Result<()> {
    let cfg = run.load()?;
    let Config::Geometry(g) = &cfg else {
        bail!(SchemaError("kind: sweep needs \"geometry\"".into()));
    };
    let mut sweep = g.to_sweep()?;
    sweep.settings = run.settings();
    let rows = run_sweep(&sweep)?;
    run.emit("_sweep.csv", &to_csv(&rows))?;

    let mut split = String::from("d,c12,noise_power_w,conf_power_w,near_destination_flag\n");
    for r in power_split_report(&rows) {
        let flag = match r.near_destination_flag {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        split.push_str(&format!(
            "{},{},{},{},{flag}\n",
            fmt_sig(r.d),
            r.c12,
            fmt_sig(r.noise_power),
            fmt_sig(r.conf_power)
        ));
    }
    run.write_only("_power_split.csv", &split)?;
    if run.svg {
        if run.output.is_none() {
            bail!(SchemaError("--svg needs --output".into()));
        }
        run.write_only("_bounds.svg", &bounds_svg(&rows))?;
        run.write_only("_power.svg", &power_svg(&rows))?;
    }
    Ok(())
}

fn dm_lattice(run: &RunConfig, spec: &DmSpec) -> Result<LatticeSpec> {
    let mut lattice = spec.lattice()?;
    if let Some(n) = run.grid_steps {
        lattice.denominator = u32::try_from(n).context("--grid-steps")?;
    }
    if let Some(b) = run.budget {
        lattice.budget = b;
    }
    Ok(lattice)
}

pub fn dm_point(run: &RunConfig, side: BoundSide) -> Result<()> {
    let cfg = run.load()?;
    let spec = dm_spec(&cfg)?;
    let ch = spec.to_channel()?;
    let credit: HelperNoiseCredit = run.noise_credit.into();
    let point = match side {
        BoundSide::Inner => {
            let Some(d) = &spec.inner_distribution else {
                bail!(SchemaError("missing field `inner_distribution`".into()));
            };
            inner_bound_point(&d.to_distribution(&ch)?, &ch, spec.c12.0, credit)?
        }
        BoundSide::Outer => {
            let Some(d) = &spec.outer_distribution else {
                bail!(SchemaError("missing field `outer_distribution`".into()));
            };
            outer_bound_point(&d.to_distribution(&ch)?, &ch, spec.c12.0)?
        }
    };
    let report = DmPointReport {
        bound: side,
        c12: spec.c12,
        noise_credit: credit_name(credit),
        point: (&point).into(),
    };
    let suffix = match side {
        BoundSide::Inner => "_dm_inner.json",
        BoundSide::Outer => "_dm_outer.json",
    };
    run.emit(suffix, &to_json(&report))
}

pub fn dm_frontier(run: &RunConfig) -> Result<()> {
    let cfg = run.load()?;
    let spec = dm_spec(&cfg)?;
    let ch = spec.to_channel()?;
    let side = match run.bound {
        Some(Side::Inner) => BoundSide::Inner,
        Some(Side::Outer) => BoundSide::Outer,
        None => spec.bound.unwrap_or(BoundSide::Inner),
    };
    let kind = match side {
        BoundSide::Inner => BoundKind::Inner,
        BoundSide::Outer => BoundKind::Outer,
    };
    let cards = spec.cards(&ch);
    let lattice = dm_lattice(run, spec)?;
    let credit: HelperNoiseCredit = run.noise_credit.into();
    let f = enumerate_frontier(&ch, spec.c12.0, kind, &cards, &lattice, credit)?;
    let (points, hull) = DmFrontierReport::points_of(&f);
    let report = DmFrontierReport {
        bound: side,
        envelope: DmFrontierReport::envelope_label(side).into(),
        c12: spec.c12,
        noise_credit: credit_name(credit),
        cards: CardsJson {
            n_u: cards.n_u,
            n_v: cards.n_v,
            n_v1: cards.n_v1,
            n_v2: cards.n_v2,
            identity_prefix: cards.identity_prefix,
        },
        denominator: lattice.denominator,
        lattice_size: f.lattice_size as u64,
        budget: lattice.budget,
        truncated: false,
        max_re: round_sig(f.max_equivocation()),
        points,
        hull,
    };
    run.emit("_dm_frontier.json", &to_json(&report))
}
