use rayon::prelude::*;

use crate::error::Result;
use crate::gaussian::{Conference, HelperNoiseCredit};
use crate::numerics::{binary_entropy, clamp_plus};
use crate::scalar::Real;

use super::aux::{AuxCards, InnerAuxDistribution, OuterAuxDistribution};
use super::bounds::{InnerEvaluator, OuterEvaluator, RateEquivocationPoint, WthiEvaluator};
use super::channel::DiscreteMemorylessChannel;
use super::joint::MiScratch;
use super::lattice::{LatticeRow, LatticeSpec, ProductLattice};

/// Which region a frontier describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Inner,
    Outer,
}

/// Pareto-optimal `(r, re)` pairs found on a lattice, sorted by `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frontier<T> {
    pub kind: BoundKind,
    pub points: Vec<RateEquivocationPoint<T>>,
    /// Upper concave hull of `points`; empty for the outer kind.
    pub hull: Vec<RateEquivocationPoint<T>>,
    pub lattice_size: u128,
}

impl<T: Real> Frontier<T> {
    pub fn max_equivocation(&self) -> T {
        self.points.iter().map(|p| p.re).fold(T::zero(), T::max)
    }

    pub fn max_rate(&self) -> T {
        self.points.iter().map(|p| p.r).fold(T::zero(), T::max)
    }
}

const CHUNK: u64 = 1 << 14;

fn inner_rows(cards: &AuxCards, n_x1: usize, n_x2: usize) -> Vec<LatticeRow> {
    let uv = cards.n_u * cards.n_v;
    let mut rows = vec![LatticeRow {
        table: 0,
        offset: 0,
        width: cards.n_u,
    }];
    let mut push = |table: usize, count: usize, width: usize| {
        rows.extend((0..count).map(|i| LatticeRow {
            table,
            offset: i * width,
            width,
        }))
    };
    push(1, cards.n_u, cards.n_v);
    push(2, uv, cards.n_v1);
    push(3, uv, cards.n_v2);
    if !cards.identity_prefix {
        push(4, cards.n_v1, n_x1);
        push(5, cards.n_v2, n_x2);
    }
    rows
}

fn outer_rows(cards: &AuxCards, n_x1: usize, n_x2: usize) -> Vec<LatticeRow> {
    let pairs = cards.n_v1 * cards.n_v2;
    let mut rows = vec![LatticeRow {
        table: 0,
        offset: 0,
        width: cards.n_u,
    }];
    rows.extend((0..cards.n_u).map(|i| LatticeRow {
        table: 1,
        offset: i * pairs,
        width: pairs,
    }));
    if !cards.identity_prefix {
        let inputs = n_x1 * n_x2;
        rows.extend((0..pairs).map(|i| LatticeRow {
            table: 2,
            offset: i * inputs,
            width: inputs,
        }));
    }
    rows
}

fn write_inner<T: Real>(lat: &ProductLattice<T>, index: u64, d: &mut InnerAuxDistribution<T>) {
    lat.write(
        index,
        &mut [
            &mut d.p_u,
            &mut d.p_v,
            &mut d.p_v1,
            &mut d.p_v2,
            &mut d.p_x1,
            &mut d.p_x2,
        ],
    );
}

fn write_outer<T: Real>(lat: &ProductLattice<T>, index: u64, d: &mut OuterAuxDistribution<T>) {
    lat.write(index, &mut [&mut d.p_u, &mut d.p_v1v2, &mut d.p_x1x2]);
}

/// Keeps the points not weakly dominated by another, sorted by `r`.
fn pareto<T: Real>(mut pts: Vec<RateEquivocationPoint<T>>) -> Vec<RateEquivocationPoint<T>> {
    pts.sort_by(|a, b| b.r.partial_cmp(&a.r).unwrap().then(b.re.partial_cmp(&a.re).unwrap()));
    let mut best = T::neg_infinity();
    let mut keep = Vec::new();
    for p in pts {
        if p.re > best {
            best = p.re;
            keep.push(p);
        }
    }
    keep.reverse();
    keep
}

/// Upper concave hull of points sorted by `r`.
fn upper_hull<T: Real>(pts: &[RateEquivocationPoint<T>]) -> Vec<RateEquivocationPoint<T>> {
    let mut hull: Vec<RateEquivocationPoint<T>> = Vec::new();
    for &p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.r - a.r) * (p.re - a.re) - (b.re - a.re) * (p.r - a.r);
            if cross >= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Evaluates `eval` at every lattice index in parallel chunks, folding each
/// chunk into a running Pareto set.
fn sweep<T, S, F>(size: u128, init: impl Fn() -> S + Sync, eval: F) -> Vec<RateEquivocationPoint<T>>
where
    T: Real,
    F: Fn(&mut S, u64) -> RateEquivocationPoint<T> + Sync,
{
    let size = size as u64;
    let mut front = Vec::new();
    let mut start = 0u64;
    while start < size {
        let end = (start + CHUNK).min(size);
        let chunk: Vec<RateEquivocationPoint<T>> = (start..end).into_par_iter().map_init(&init, &eval).collect();
        front.extend(pareto(chunk));
        front = pareto(front);
        start = end;
    }
    front
}

/// Enumerates the inner or outer region on the lattice and returns its
/// Pareto frontier. Fails with `BudgetExceeded` before evaluating anything
/// if the lattice is larger than `lattice.budget`.
pub fn enumerate_frontier<T: Real>(
    ch: &DiscreteMemorylessChannel<T>,
    c12: Conference<T>,
    kind: BoundKind,
    cards: &AuxCards,
    lattice: &LatticeSpec,
    credit: HelperNoiseCredit,
) -> Result<Frontier<T>> {
    c12.validate()?;
    cards.validate(ch)?;
    let (n_x1, n_x2) = (ch.n_x1, ch.n_x2);
    match kind {
        BoundKind::Inner => {
            let lat = ProductLattice::new(inner_rows(cards, n_x1, n_x2), lattice)?;
            let proto = InnerAuxDistribution::uniform(cards, n_x1, n_x2);
            let eval = InnerEvaluator::new(&proto.dims(ch));
            let points = sweep(
                lat.size(),
                || (proto.clone(), Vec::new(), MiScratch::default()),
                |(d, joint, scratch), i| {
                    write_inner(&lat, i, d);
                    d.fill_joint(ch, joint);
                    eval.point(joint, c12, credit, scratch)
                },
            );
            let hull = upper_hull(&points);
            Ok(Frontier {
                kind,
                points,
                hull,
                lattice_size: lat.size(),
            })
        }
        BoundKind::Outer => {
            let lat = ProductLattice::new(outer_rows(cards, n_x1, n_x2), lattice)?;
            let proto = OuterAuxDistribution::uniform(cards, n_x1, n_x2);
            let eval = OuterEvaluator::new(&proto.dims(ch));
            let points = sweep(
                lat.size(),
                || (proto.clone(), Vec::new(), MiScratch::default()),
                |(d, joint, scratch), i| {
                    write_outer(&lat, i, d);
                    d.fill_joint(ch, joint);
                    eval.point(joint, c12, scratch)
                },
            );
            Ok(Frontier {
                kind,
                points,
                hull: Vec::new(),
                lattice_size: lat.size(),
            })
        }
    }
}

/// Best helper-interference wiretap rate found on the lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct WthiOptimum<T> {
    pub value: T,
    pub dist: InnerAuxDistribution<T>,
}

/// Maximises the helper-interference objective over distributions with
/// unary `U`, `V` and the given `|V1|`, `|V2|` (or identity maps).
pub fn wthi_lower_bound<T: Real>(
    ch: &DiscreteMemorylessChannel<T>,
    n_v1: usize,
    n_v2: usize,
    identity_prefix: bool,
    lattice: &LatticeSpec,
) -> Result<WthiOptimum<T>> {
    let cards = AuxCards {
        n_u: 1,
        n_v: 1,
        n_v1,
        n_v2,
        identity_prefix,
    };
    cards.validate(ch)?;
    let lat = ProductLattice::new(inner_rows(&cards, ch.n_x1, ch.n_x2), lattice)?;
    let proto = InnerAuxDistribution::uniform(&cards, ch.n_x1, ch.n_x2);
    let eval = WthiEvaluator::new(&proto.dims(ch));
    let values: Vec<T> = (0..lat.size() as u64)
        .into_par_iter()
        .map_init(
            || (proto.clone(), Vec::new(), MiScratch::default()),
            |(d, joint, scratch), i| {
                write_inner(&lat, i, d);
                d.fill_joint(ch, joint);
                eval.value(joint, scratch)
            },
        )
        .collect();
    let (best, value) =
        values.iter().enumerate().fold(
            (0usize, T::neg_infinity()),
            |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
        );
    let mut dist = proto;
    write_inner(&lat, best as u64, &mut dist);
    Ok(WthiOptimum { value, dist })
}

/// Computed and closed-form secrecy capacity of a degraded binary wiretap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WynerCheck<T> {
    pub computed: T,
    pub oracle: T,
}

/// Runs the outer region of a binary wiretap (helper absent, `Z` a
/// BSC(`cascade`) of `Y`, `Y` a BSC(`main`) of `X1`) and compares its
/// largest equivocation with `h(main * cascade) - h(main)`.
pub fn wyner_reduction_check<T: Real>(main: T, cascade: T, lattice: &LatticeSpec) -> Result<WynerCheck<T>> {
    let ch = DiscreteMemorylessChannel::degraded_binary(main, cascade)?;
    let cards = AuxCards {
        n_u: 1,
        n_v: 1,
        n_v1: 2,
        n_v2: 1,
        identity_prefix: false,
    };
    let f = enumerate_frontier(
        &ch,
        Conference::Finite(T::zero()),
        BoundKind::Outer,
        &cards,
        lattice,
        HelperNoiseCredit::default(),
    )?;
    let one = T::one();
    let composed = main * (one - cascade) + cascade * (one - main);
    let oracle = clamp_plus(binary_entropy(composed)? - binary_entropy(main)?);
    Ok(WynerCheck {
        computed: f.max_equivocation(),
        oracle,
    })
}
