use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance on probability-vector sums.
pub(crate) fn row_tolerance<T: Real>(len: usize) -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(8.0) * T::from_usize_lossy(len.max(1)))
}

/// Checks that `row` is a probability vector.
pub(crate) fn check_row<T: Real>(table: &'static str, row: &[T], label: impl FnOnce() -> String) -> Result<()> {
    let mut sum = T::zero();
    for &p in row {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::InvalidTable {
                table,
                row: label(),
                sum: p.to_f64_lossy(),
            });
        }
        sum = sum + p;
    }
    if (sum - T::one()).abs() > row_tolerance(row.len()) {
        return Err(Error::InvalidTable {
            table,
            row: label(),
            sum: sum.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Memoryless law `p(y, z | x1, x2)` on finite alphabets.
///
/// `law` is row-major over `(x1, x2, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMemorylessChannel<T> {
    pub n_x1: usize,
    pub n_x2: usize,
    pub n_y: usize,
    pub n_z: usize,
    law: Vec<T>,
}

impl<T: Real> DiscreteMemorylessChannel<T> {
    pub fn new(n_x1: usize, n_x2: usize, n_y: usize, n_z: usize, law: Vec<T>) -> Result<Self> {
        if [n_x1, n_x2, n_y, n_z].contains(&0) {
            return Err(Error::Config("alphabet sizes must be >= 1".into()));
        }
        let expected = n_x1 * n_x2 * n_y * n_z;
        if law.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "channel law has {} entries, alphabets need {expected}",
                law.len()
            )));
        }
        let ch = Self {
            n_x1,
            n_x2,
            n_y,
            n_z,
            law,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn from_fn(
        n_x1: usize,
        n_x2: usize,
        n_y: usize,
        n_z: usize,
        f: impl Fn(usize, usize, usize, usize) -> T,
    ) -> Result<Self> {
        let mut law = Vec::with_capacity(n_x1 * n_x2 * n_y * n_z);
        for x1 in 0..n_x1 {
            for x2 in 0..n_x2 {
                for y in 0..n_y {
                    for z in 0..n_z {
                        law.push(f(x1, x2, y, z));
                    }
                }
            }
        }
        Self::new(n_x1, n_x2, n_y, n_z, law)
    }

    /// Binary wiretap without a helper (`X2` unary): `Y` is `X1` through a
    /// BSC(`main`), `Z` is `Y` through a further BSC(`cascade`).
    pub fn degraded_binary(main: T, cascade: T) -> Result<Self> {
        for (what, p) in [("main crossover", main), ("cascade crossover", cascade)] {
            if !(p >= T::zero() && p <= T::one()) {
                return Err(Error::domain(what, p.to_f64_lossy(), "must lie in [0, 1]"));
            }
        }
        let bsc = |p: T, a: usize, b: usize| if a == b { T::one() - p } else { p };
        Self::from_fn(2, 1, 2, 2, |x1, _, y, z| bsc(main, x1, y) * bsc(cascade, y, z))
    }

    /// Deterministic channel `(y, z) = f(x1, x2)`.
    pub fn deterministic(
        n_x1: usize,
        n_x2: usize,
        n_y: usize,
        n_z: usize,
        f: impl Fn(usize, usize) -> (usize, usize),
    ) -> Result<Self> {
        Self::from_fn(n_x1, n_x2, n_y, n_z, |x1, x2, y, z| {
            if f(x1, x2) == (y, z) {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    pub fn validate(&self) -> Result<()> {
        let block = self.n_y * self.n_z;
        for (i, row) in self.law.chunks(block).enumerate() {
            let (x1, x2) = (i / self.n_x2, i % self.n_x2);
            check_row("p(y,z|x1,x2)", row, || format!("(x1={x1}, x2={x2})"))?;
        }
        Ok(())
    }

    pub fn prob(&self, x1: usize, x2: usize, y: usize, z: usize) -> T {
        self.law[((x1 * self.n_x2 + x2) * self.n_y + y) * self.n_z + z]
    }

    /// The `(y, z)` block for one input pair.
    pub fn row(&self, x1: usize, x2: usize) -> &[T] {
        let block = self.n_y * self.n_z;
        let start = (x1 * self.n_x2 + x2) * block;
        &self.law[start..start + block]
    }

    pub fn law(&self) -> &[T] {
        &self.law
    }
}
