use crate::error::{Error, Result};
use crate::scalar::Real;

use super::channel::{check_row, DiscreteMemorylessChannel};
use super::joint::{JointTable, Var};

/// Auxiliary alphabet sizes for a frontier search.
///
/// With `identity_prefix` set, `V1 = X1` and `V2 = X2`, so `n_v1`, `n_v2`
/// must equal the input alphabet sizes and only the upper layers are searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxCards {
    pub n_u: usize,
    pub n_v: usize,
    pub n_v1: usize,
    pub n_v2: usize,
    pub identity_prefix: bool,
}

impl AuxCards {
    /// `|U| = |V| = 2`, `|V1| = |X1| + 1`, `|V2| = |X2| + 1`.
    pub fn defaults_for<T: Real>(ch: &DiscreteMemorylessChannel<T>) -> Self {
        Self {
            n_u: 2,
            n_v: 2,
            n_v1: ch.n_x1 + 1,
            n_v2: ch.n_x2 + 1,
            identity_prefix: false,
        }
    }

    /// Identity prefix with the given `|U|` and `|V|`.
    pub fn identity<T: Real>(ch: &DiscreteMemorylessChannel<T>, n_u: usize, n_v: usize) -> Self {
        Self {
            n_u,
            n_v,
            n_v1: ch.n_x1,
            n_v2: ch.n_x2,
            identity_prefix: true,
        }
    }

    pub fn validate<T: Real>(&self, ch: &DiscreteMemorylessChannel<T>) -> Result<()> {
        if [self.n_u, self.n_v, self.n_v1, self.n_v2].contains(&0) {
            return Err(Error::Config("auxiliary cardinalities must be >= 1".into()));
        }
        if self.identity_prefix && (self.n_v1 != ch.n_x1 || self.n_v2 != ch.n_x2) {
            return Err(Error::Config(format!(
                "identity prefix needs |V1| = |X1| = {} and |V2| = |X2| = {}",
                ch.n_x1, ch.n_x2
            )));
        }
        Ok(())
    }
}

fn check_table<T: Real>(
    table: &'static str,
    probs: &[T],
    width: usize,
    rows: usize,
    row_name: impl Fn(usize) -> String,
) -> Result<()> {
    if probs.len() != width * rows {
        return Err(Error::DimensionMismatch(format!(
            "{table} has {} entries, expected {}",
            probs.len(),
            width * rows
        )));
    }
    for (i, row) in probs.chunks(width).enumerate() {
        check_row(table, row, || row_name(i))?;
    }
    Ok(())
}

fn identity<T: Real>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

/// Factorised law `p(u) p(v|u) p(v1|v,u) p(v2|v,u) p(x1|v1) p(x2|v2)`.
///
/// Each table is row-major with the conditioning variables first, e.g.
/// `p_v1[(u * n_v + v) * n_v1 + v1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerAuxDistribution<T> {
    pub n_u: usize,
    pub n_v: usize,
    pub n_v1: usize,
    pub n_v2: usize,
    pub n_x1: usize,
    pub n_x2: usize,
    pub p_u: Vec<T>,
    pub p_v: Vec<T>,
    pub p_v1: Vec<T>,
    pub p_v2: Vec<T>,
    pub p_x1: Vec<T>,
    pub p_x2: Vec<T>,
}

impl<T: Real> InnerAuxDistribution<T> {
    /// Every table uniform, with identity input maps when `cards.identity_prefix`.
    pub fn uniform(cards: &AuxCards, n_x1: usize, n_x2: usize) -> Self {
        let u = |rows: usize, width: usize| vec![T::one() / T::from_usize_lossy(width); rows * width];
        let uv = cards.n_u * cards.n_v;
        Self {
            n_u: cards.n_u,
            n_v: cards.n_v,
            n_v1: cards.n_v1,
            n_v2: cards.n_v2,
            n_x1,
            n_x2,
            p_u: u(1, cards.n_u),
            p_v: u(cards.n_u, cards.n_v),
            p_v1: u(uv, cards.n_v1),
            p_v2: u(uv, cards.n_v2),
            p_x1: if cards.identity_prefix {
                identity(n_x1)
            } else {
                u(cards.n_v1, n_x1)
            },
            p_x2: if cards.identity_prefix {
                identity(n_x2)
            } else {
                u(cards.n_v2, n_x2)
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let uv = self.n_u * self.n_v;
        let nv = self.n_v;
        check_table("p(u)", &self.p_u, self.n_u, 1, |_| "all".into())?;
        check_table("p(v|u)", &self.p_v, self.n_v, self.n_u, |i| format!("u={i}"))?;
        check_table("p(v1|v,u)", &self.p_v1, self.n_v1, uv, |i| {
            format!("(u={}, v={})", i / nv, i % nv)
        })?;
        check_table("p(v2|v,u)", &self.p_v2, self.n_v2, uv, |i| {
            format!("(u={}, v={})", i / nv, i % nv)
        })?;
        check_table("p(x1|v1)", &self.p_x1, self.n_x1, self.n_v1, |i| format!("v1={i}"))?;
        check_table("p(x2|v2)", &self.p_x2, self.n_x2, self.n_v2, |i| format!("v2={i}"))?;
        Ok(())
    }

    pub(crate) fn dims<U>(&self, ch: &DiscreteMemorylessChannel<U>) -> Vec<usize> {
        vec![
            self.n_u, self.n_v, self.n_v1, self.n_v2, self.n_x1, self.n_x2, ch.n_y, ch.n_z,
        ]
    }

    pub(crate) const LABELS: [Var; 8] = [Var::U, Var::V, Var::V1, Var::V2, Var::X1, Var::X2, Var::Y, Var::Z];

    /// Writes the joint law over `[U, V, V1, V2, X1, X2, Y, Z]` into `out`.
    pub(crate) fn fill_joint(&self, ch: &DiscreteMemorylessChannel<T>, out: &mut Vec<T>) {
        let (n_x1, n_x2) = (self.n_x1, self.n_x2);
        let block = ch.n_y * ch.n_z;
        let size = self.n_u * self.n_v * self.n_v1 * self.n_v2 * n_x1 * n_x2 * block;
        out.clear();
        out.resize(size, T::zero());
        let mut base = 0usize;
        for u in 0..self.n_u {
            for v in 0..self.n_v {
                let puv = self.p_u[u] * self.p_v[u * self.n_v + v];
                let row = u * self.n_v + v;
                for v1 in 0..self.n_v1 {
                    let a = puv * self.p_v1[row * self.n_v1 + v1];
                    for v2 in 0..self.n_v2 {
                        let b = a * self.p_v2[row * self.n_v2 + v2];
                        if b == T::zero() {
                            base += n_x1 * n_x2 * block;
                            continue;
                        }
                        for x1 in 0..n_x1 {
                            let c = b * self.p_x1[v1 * n_x1 + x1];
                            for x2 in 0..n_x2 {
                                let d = c * self.p_x2[v2 * n_x2 + x2];
                                if d != T::zero() {
                                    for (slot, &w) in out[base..base + block].iter_mut().zip(ch.row(x1, x2)) {
                                        *slot = d * w;
                                    }
                                }
                                base += block;
                            }
                        }
                    }
                }
            }
        }
    }

    pub(crate) fn check_against(&self, ch: &DiscreteMemorylessChannel<T>) -> Result<()> {
        if self.n_x1 != ch.n_x1 || self.n_x2 != ch.n_x2 {
            return Err(Error::DimensionMismatch(format!(
                "distribution inputs are {}x{}, channel inputs are {}x{}",
                self.n_x1, self.n_x2, ch.n_x1, ch.n_x2
            )));
        }
        self.validate()
    }
}

/// Factorised law `p(u) p(v1, v2|u) p(x1, x2|v1, v2)`.
///
/// `p_v1v2[(u * n_v1 + v1) * n_v2 + v2]` and
/// `p_x1x2[((v1 * n_v2 + v2) * n_x1 + x1) * n_x2 + x2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterAuxDistribution<T> {
    pub n_u: usize,
    pub n_v1: usize,
    pub n_v2: usize,
    pub n_x1: usize,
    pub n_x2: usize,
    pub p_u: Vec<T>,
    pub p_v1v2: Vec<T>,
    pub p_x1x2: Vec<T>,
}

impl<T: Real> OuterAuxDistribution<T> {
    pub fn uniform(cards: &AuxCards, n_x1: usize, n_x2: usize) -> Self {
        let u = |rows: usize, width: usize| vec![T::one() / T::from_usize_lossy(width); rows * width];
        let pairs = cards.n_v1 * cards.n_v2;
        Self {
            n_u: cards.n_u,
            n_v1: cards.n_v1,
            n_v2: cards.n_v2,
            n_x1,
            n_x2,
            p_u: u(1, cards.n_u),
            p_v1v2: u(cards.n_u, pairs),
            p_x1x2: if cards.identity_prefix {
                identity(pairs)
            } else {
                u(pairs, n_x1 * n_x2)
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let nv2 = self.n_v2;
        check_table("p(u)", &self.p_u, self.n_u, 1, |_| "all".into())?;
        check_table("p(v1,v2|u)", &self.p_v1v2, self.n_v1 * self.n_v2, self.n_u, |i| {
            format!("u={i}")
        })?;
        check_table(
            "p(x1,x2|v1,v2)",
            &self.p_x1x2,
            self.n_x1 * self.n_x2,
            self.n_v1 * self.n_v2,
            |i| format!("(v1={}, v2={})", i / nv2, i % nv2),
        )?;
        Ok(())
    }

    pub(crate) fn dims<U>(&self, ch: &DiscreteMemorylessChannel<U>) -> Vec<usize> {
        vec![self.n_u, self.n_v1, self.n_v2, self.n_x1, self.n_x2, ch.n_y, ch.n_z]
    }

    pub(crate) const LABELS: [Var; 7] = [Var::U, Var::V1, Var::V2, Var::X1, Var::X2, Var::Y, Var::Z];

    /// Writes the joint law over `[U, V1, V2, X1, X2, Y, Z]` into `out`.
    pub(crate) fn fill_joint(&self, ch: &DiscreteMemorylessChannel<T>, out: &mut Vec<T>) {
        let block = ch.n_y * ch.n_z;
        let inputs = self.n_x1 * self.n_x2;
        let pairs = self.n_v1 * self.n_v2;
        out.clear();
        out.resize(self.n_u * pairs * inputs * block, T::zero());
        let mut base = 0usize;
        for u in 0..self.n_u {
            for pair in 0..pairs {
                let a = self.p_u[u] * self.p_v1v2[u * pairs + pair];
                if a == T::zero() {
                    base += inputs * block;
                    continue;
                }
                for x in 0..inputs {
                    let b = a * self.p_x1x2[pair * inputs + x];
                    if b != T::zero() {
                        let (x1, x2) = (x / self.n_x2, x % self.n_x2);
                        for (slot, &w) in out[base..base + block].iter_mut().zip(ch.row(x1, x2)) {
                            *slot = b * w;
                        }
                    }
                    base += block;
                }
            }
        }
    }

    pub(crate) fn check_against(&self, ch: &DiscreteMemorylessChannel<T>) -> Result<()> {
        if self.n_x1 != ch.n_x1 || self.n_x2 != ch.n_x2 {
            return Err(Error::DimensionMismatch(format!(
                "distribution inputs are {}x{}, channel inputs are {}x{}",
                self.n_x1, self.n_x2, ch.n_x1, ch.n_x2
            )));
        }
        self.validate()
    }
}

/// Distributions that induce a joint law with a channel.
pub trait AuxDistribution<T: Real> {
    fn joint_law(&self, ch: &DiscreteMemorylessChannel<T>) -> Result<JointTable<T>>;
}

impl<T: Real> AuxDistribution<T> for InnerAuxDistribution<T> {
    fn joint_law(&self, ch: &DiscreteMemorylessChannel<T>) -> Result<JointTable<T>> {
        self.check_against(ch)?;
        let mut probs = Vec::new();
        self.fill_joint(ch, &mut probs);
        Ok(JointTable::labelled(self.dims(ch), Self::LABELS.to_vec(), probs))
    }
}

impl<T: Real> AuxDistribution<T> for OuterAuxDistribution<T> {
    fn joint_law(&self, ch: &DiscreteMemorylessChannel<T>) -> Result<JointTable<T>> {
        self.check_against(ch)?;
        let mut probs = Vec::new();
        self.fill_joint(ch, &mut probs);
        Ok(JointTable::labelled(self.dims(ch), Self::LABELS.to_vec(), probs))
    }
}

/// Joint law of the auxiliaries, inputs and outputs.
pub fn joint_law<T: Real, D: AuxDistribution<T>>(dist: &D, ch: &DiscreteMemorylessChannel<T>) -> Result<JointTable<T>> {
    dist.joint_law(ch)
}
