use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numerics::{clamp_plus, plogp_neg};
use crate::scalar::Real;

use super::channel::check_row;

/// Random variables appearing in the auxiliary joint laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    V1,
    V2,
    X1,
    X2,
    Y,
    Z,
}

/// Dense joint pmf, row-major with the first axis slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable<T> {
    dims: Vec<usize>,
    labels: Vec<Var>,
    probs: Vec<T>,
}

impl<T: Real> JointTable<T> {
    pub fn new(dims: Vec<usize>, probs: Vec<T>) -> Result<Self> {
        let size: usize = dims.iter().product();
        if dims.is_empty() || size == 0 || dims.len() > 16 {
            return Err(Error::Config("joint table needs 1..=16 non-empty axes".into()));
        }
        if probs.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "joint table has {} entries, axes need {size}",
                probs.len()
            )));
        }
        check_row("joint", &probs, || "all".into())?;
        Ok(Self {
            dims,
            labels: Vec::new(),
            probs,
        })
    }

    pub(crate) fn labelled(dims: Vec<usize>, labels: Vec<Var>, probs: Vec<T>) -> Self {
        debug_assert_eq!(dims.len(), labels.len());
        Self { dims, labels, probs }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[Var] {
        &self.labels
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    /// Axis index of a labelled variable.
    pub fn axis(&self, var: Var) -> Result<usize> {
        self.labels
            .iter()
            .position(|&v| v == var)
            .ok_or_else(|| Error::Config(format!("joint table has no axis for {var:?}")))
    }

    fn axes(&self, vars: &[Var]) -> Result<Vec<usize>> {
        vars.iter().map(|&v| self.axis(v)).collect()
    }

    /// Marginal pmf over `axes`, in the order given.
    pub fn marginal(&self, axes: &[usize]) -> Result<Vec<T>> {
        let mask = axis_mask(&self.dims, axes)?;
        let map = MarginalMap::new(&self.dims, mask);
        let mut out = Vec::new();
        map.accumulate(&self.probs, &mut out);
        // The map orders kept axes by position; permute to the requested order.
        let mut sorted: Vec<usize> = axes.to_vec();
        sorted.sort_unstable();
        if sorted == axes {
            return Ok(out);
        }
        let kept: Vec<usize> = sorted.iter().map(|&a| self.dims[a]).collect();
        let mut permuted = vec![T::zero(); out.len()];
        let mut coord = vec![0usize; axes.len()];
        for (flat, slot) in permuted.iter_mut().enumerate() {
            let mut rem = flat;
            for (i, &a) in axes.iter().enumerate().rev() {
                coord[i] = rem % self.dims[a];
                rem /= self.dims[a];
            }
            let mut src = 0;
            for (j, &a) in sorted.iter().enumerate() {
                let pos = axes.iter().position(|&b| b == a).unwrap();
                src = src * kept[j] + coord[pos];
            }
            *slot = out[src];
        }
        Ok(permuted)
    }

    /// Entropy in bits of the marginal over `axes`.
    pub fn entropy(&self, axes: &[usize]) -> Result<T> {
        let mask = axis_mask(&self.dims, axes)?;
        let mut scratch = Vec::new();
        Ok(MarginalMap::new(&self.dims, mask).entropy(&self.probs, &mut scratch))
    }

    /// [`conditional_mi`] addressed by variable labels.
    pub fn mi(&self, a: &[Var], b: &[Var], c: &[Var]) -> Result<T> {
        conditional_mi(self, &self.axes(a)?, &self.axes(b)?, &self.axes(c)?)
    }
}

/// `I(A; B | C)` in bits, computed from marginal entropies and clamped at 0.
///
/// Empty `A` or `B` gives 0; empty `C` gives the unconditional information.
pub fn conditional_mi<T: Real>(joint: &JointTable<T>, a: &[usize], b: &[usize], c: &[usize]) -> Result<T> {
    let ma = axis_mask(&joint.dims, a)?;
    let mb = axis_mask(&joint.dims, b)?;
    let mc = axis_mask(&joint.dims, c)?;
    for (x, y) in [(ma, mb), (ma, mc), (mb, mc)] {
        if x & y != 0 {
            return Err(Error::OverlappingSets((x & y).trailing_zeros() as usize));
        }
    }
    if ma == 0 || mb == 0 {
        return Ok(T::zero());
    }
    let plan = MiPlan::new(&joint.dims, &[(ma, mb, mc)]);
    let mut scratch = MiScratch::default();
    Ok(plan.evaluate(&joint.probs, &mut scratch)[0])
}

fn axis_mask(dims: &[usize], axes: &[usize]) -> Result<u32> {
    let mut mask = 0u32;
    for &a in axes {
        if a >= dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "axis {a} out of range for a {}-axis table",
                dims.len()
            )));
        }
        if mask & (1 << a) != 0 {
            return Err(Error::OverlappingSets(a));
        }
        mask |= 1 << a;
    }
    Ok(mask)
}

/// Precomputed flat-index map from a joint table onto one marginal.
#[derive(Debug, Clone)]
pub(crate) struct MarginalMap {
    target: Vec<u32>,
    size: usize,
}

impl MarginalMap {
    pub(crate) fn new(dims: &[usize], mask: u32) -> Self {
        let n = dims.len();
        let mut stride = vec![0usize; n];
        let mut size = 1usize;
        for a in (0..n).rev() {
            if mask & (1 << a) != 0 {
                stride[a] = size;
                size *= dims[a];
            }
        }
        let total: usize = dims.iter().product();
        let mut target = Vec::with_capacity(total);
        let mut coord = vec![0usize; n];
        let mut t = 0usize;
        for _ in 0..total {
            target.push(t as u32);
            for a in (0..n).rev() {
                coord[a] += 1;
                t += stride[a];
                if coord[a] < dims[a] {
                    break;
                }
                t -= stride[a] * dims[a];
                coord[a] = 0;
            }
        }
        Self { target, size }
    }

    fn accumulate<T: Real>(&self, probs: &[T], out: &mut Vec<T>) {
        out.clear();
        out.resize(self.size, T::zero());
        for (&p, &t) in probs.iter().zip(&self.target) {
            if p > T::zero() {
                out[t as usize] = out[t as usize] + p;
            }
        }
    }

    pub(crate) fn entropy<T: Real>(&self, probs: &[T], scratch: &mut Vec<T>) -> T {
        if self.size == 1 {
            return T::zero();
        }
        self.accumulate(probs, scratch);
        scratch.iter().map(|&p| plogp_neg(p)).sum()
    }
}

/// Evaluates a fixed list of conditional mutual informations on tables of
/// one shape, sharing the marginal entropies between terms.
#[derive(Debug, Clone)]
pub(crate) struct MiPlan {
    maps: Vec<MarginalMap>,
    /// Per term: indices into `maps` for H(AC), H(BC), H(ABC), H(C).
    terms: Vec<[usize; 4]>,
}

#[derive(Debug)]
pub(crate) struct MiScratch<T> {
    buf: Vec<T>,
    entropies: Vec<T>,
    out: Vec<T>,
}

impl<T> Default for MiScratch<T> {
    fn default() -> Self {
        Self {
            buf: Vec::new(),
            entropies: Vec::new(),
            out: Vec::new(),
        }
    }
}

impl MiPlan {
    pub(crate) fn new(dims: &[usize], terms: &[(u32, u32, u32)]) -> Self {
        let mut index: BTreeMap<u32, usize> = BTreeMap::new();
        let mut masks = Vec::new();
        let mut slot = |m: u32| {
            *index.entry(m).or_insert_with(|| {
                masks.push(m);
                masks.len() - 1
            })
        };
        let terms: Vec<[usize; 4]> = terms
            .iter()
            .map(|&(a, b, c)| [slot(a | c), slot(b | c), slot(a | b | c), slot(c)])
            .collect();
        let maps = masks.iter().map(|&m| MarginalMap::new(dims, m)).collect();
        Self { maps, terms }
    }

    pub(crate) fn evaluate<'s, T: Real>(&self, probs: &[T], scratch: &'s mut MiScratch<T>) -> &'s [T] {
        scratch.entropies.clear();
        for map in &self.maps {
            let h = map.entropy(probs, &mut scratch.buf);
            scratch.entropies.push(h);
        }
        scratch.out.clear();
        for &[ac, bc, abc, c] in &self.terms {
            let e = &scratch.entropies;
            scratch.out.push(clamp_plus(e[ac] + e[bc] - e[abc] - e[c]));
        }
        &scratch.out
    }
}

/// Bit mask of the axes holding `vars` in `labels`.
pub(crate) fn var_mask(labels: &[Var], vars: &[Var]) -> u32 {
    vars.iter().fold(0, |m, v| {
        let a = labels.iter().position(|l| l == v).expect("variable present in layout");
        m | (1 << a)
    })
}
