use crate::error::{Error, Result};
use crate::scalar::Real;

/// Resolution and size cap for lattice searches over distributions.
///
/// Every searched pmf has entries that are multiples of `1 / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    pub denominator: u32,
    pub budget: u64,
}

impl LatticeSpec {
    pub const DEFAULT_BUDGET: u64 = 2_000_000;

    pub fn new(denominator: u32) -> Self {
        Self {
            denominator,
            budget: Self::DEFAULT_BUDGET,
        }
    }

    /// Lattice with step `grid_step`, which must be `1/N` for an integer `N`.
    pub fn from_step(grid_step: f64) -> Result<Self> {
        if !(grid_step > 0.0 && grid_step <= 1.0) {
            return Err(Error::domain("grid_step", grid_step, "must lie in (0, 1]"));
        }
        let n = (1.0 / grid_step).round();
        if ((1.0 / n) - grid_step).abs() > 1e-9 * grid_step {
            return Err(Error::domain("grid_step", grid_step, "must be 1/N for an integer N"));
        }
        Ok(Self::new(n as u32))
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.denominator == 0 {
            return Err(Error::domain("denominator", 0.0, "must be >= 1"));
        }
        Ok(())
    }
}

/// Number of pmfs on `width` symbols with entries in multiples of `1/n`.
pub fn simplex_count(width: usize, n: u32) -> u128 {
    if width == 0 {
        return 0;
    }
    // C(n + width - 1, width - 1), built incrementally so every step is exact.
    let k = (width - 1) as u128;
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c.saturating_mul(n as u128 + i) / i;
    }
    c
}

/// All compositions of `n` into `width` ordered parts, lexicographically.
pub fn simplex_points(width: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(width: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if width == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=left {
            prefix.push(first);
            rec(width - 1, left - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if width > 0 {
        rec(width, n, &mut Vec::with_capacity(width), &mut out);
    }
    out
}

/// One row of a conditional table searched over the simplex.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LatticeRow {
    pub table: usize,
    pub offset: usize,
    pub width: usize,
}

/// Cartesian product of per-row simplex lattices, indexed with the first
/// row varying slowest.
#[derive(Debug, Clone)]
pub(crate) struct ProductLattice<T> {
    rows: Vec<LatticeRow>,
    /// Simplex points per row width, already divided by the denominator.
    points: Vec<Vec<Vec<T>>>,
    radix: Vec<usize>,
    size: u128,
}

impl<T: Real> ProductLattice<T> {
    pub(crate) fn new(rows: Vec<LatticeRow>, spec: &LatticeSpec) -> Result<Self> {
        spec.validate()?;
        let size = rows.iter().fold(1u128, |acc, r| {
            acc.saturating_mul(simplex_count(r.width, spec.denominator))
        });
        if size > spec.budget as u128 {
            return Err(Error::BudgetExceeded {
                lattice_size: size,
                budget: spec.budget,
            });
        }
        let max_width = rows.iter().map(|r| r.width).max().unwrap_or(0);
        let n = T::from_usize_lossy(spec.denominator as usize);
        let points = (0..=max_width)
            .map(|w| {
                if rows.iter().any(|r| r.width == w) {
                    simplex_points(w, spec.denominator)
                        .into_iter()
                        .map(|p| p.into_iter().map(|k| T::from_usize_lossy(k as usize) / n).collect())
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect::<Vec<Vec<Vec<T>>>>();
        let radix = rows.iter().map(|r| points[r.width].len()).collect();
        Ok(Self {
            rows,
            points,
            radix,
            size,
        })
    }

    pub(crate) fn size(&self) -> u128 {
        self.size
    }

    /// Writes lattice point `index` into the tables.
    pub(crate) fn write(&self, mut index: u64, tables: &mut [&mut Vec<T>]) {
        for (row, &radix) in self.rows.iter().zip(&self.radix).rev() {
            let digit = (index % radix as u64) as usize;
            index /= radix as u64;
            let values = &self.points[row.width][digit];
            tables[row.table][row.offset..row.offset + row.width].copy_from_slice(values);
        }
    }
}
