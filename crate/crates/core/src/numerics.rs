//! Scalar helpers and the deterministic box optimizer behind every `max`
//! in the Gaussian bounds.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `C(x) = log2(1 + x)` in bits.
pub fn cap<T: Real>(x: T) -> Result<T> {
    if !(x >= T::zero()) {
        return Err(Error::domain("cap argument", x.to_f64_lossy(), "must be >= 0"));
    }
    Ok(x.ln_1p() / T::LN_2())
}

/// `[x]^+ = max(0, x)`.
pub fn clamp_plus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x
    } else {
        T::zero()
    }
}

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn binary_entropy<T: Real>(p: T) -> Result<T> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::domain("probability", p.to_f64_lossy(), "must lie in [0, 1]"));
    }
    Ok(plogp_neg(p) + plogp_neg(T::one() - p))
}

/// `-p log2 p`, zero at `p = 0`.
pub(crate) fn plogp_neg<T: Real>(p: T) -> T {
    if p > T::zero() {
        -p * p.log2()
    } else {
        T::zero()
    }
}

/// Search box and resolution for [`maximize`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T> {
    pub lo: Vec<T>,
    pub hi: Vec<T>,
    /// Lattice points per dimension, endpoints included.
    pub coarse_steps: usize,
    pub refine_rounds: usize,
    /// Factor applied to the refinement radius after every round.
    pub refine_shrink: T,
}

impl<T: Real> GridSpec<T> {
    pub const DEFAULT_COARSE_STEPS: usize = 101;
    pub const DEFAULT_REFINE_ROUNDS: usize = 4;

    pub fn new(lo: Vec<T>, hi: Vec<T>) -> Self {
        Self {
            lo,
            hi,
            coarse_steps: Self::DEFAULT_COARSE_STEPS,
            refine_rounds: Self::DEFAULT_REFINE_ROUNDS,
            refine_shrink: T::lit(0.25),
        }
    }

    /// Unit box `[0, 1]^dims`.
    pub fn unit(dims: usize) -> Self {
        Self::new(vec![T::zero(); dims], vec![T::one(); dims])
    }

    pub fn with_steps(mut self, coarse_steps: usize) -> Self {
        self.coarse_steps = coarse_steps;
        self
    }

    pub fn with_refine_rounds(mut self, rounds: usize) -> Self {
        self.refine_rounds = rounds;
        self
    }

    pub fn dims(&self) -> usize {
        self.lo.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.len() != self.hi.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} lower and {} upper bounds",
                self.lo.len(),
                self.hi.len()
            )));
        }
        if self.lo.is_empty() {
            return Err(Error::Config("grid needs at least one dimension".into()));
        }
        for (lo, hi) in self.lo.iter().zip(&self.hi) {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::domain(
                    "grid upper bound",
                    hi.to_f64_lossy(),
                    "must be finite and >= lower bound",
                ));
            }
        }
        if self.coarse_steps < 2 {
            return Err(Error::domain("coarse_steps", self.coarse_steps as f64, "must be >= 2"));
        }
        if !(self.refine_shrink > T::zero() && self.refine_shrink < T::one()) {
            return Err(Error::domain(
                "refine_shrink",
                self.refine_shrink.to_f64_lossy(),
                "must lie in (0, 1)",
            ));
        }
        Ok(())
    }
}

/// Result of [`maximize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Maximum<T> {
    pub argmax: Vec<T>,
    pub value: T,
}

/// Maximizes `f` over the box of `spec`.
///
/// The coarse lattice is evaluated first; each refinement round then lays a
/// lattice with the same number of points per dimension over a shrinking
/// neighbourhood of the incumbent (clipped to the box). Candidates are ranked
/// by value, and values equal to within a few ulps by the lexicographically
/// smallest argument, so the result does not depend on how lattice cells are
/// scheduled. Each extra refinement round can only raise the value (up to
/// that tie tolerance).
pub fn maximize<T, F>(f: F, spec: &GridSpec<T>) -> Result<Maximum<T>>
where
    T: Real,
    F: Fn(&[T]) -> Result<T> + Sync,
{
    spec.validate()?;
    let steps = spec.coarse_steps;
    let axes: Vec<Vec<T>> = spec
        .lo
        .iter()
        .zip(&spec.hi)
        .map(|(&lo, &hi)| lattice_axis(lo, hi, steps))
        .collect();
    let mut best = evaluate_lattice(&f, &axes, None)?;

    let denom = T::from_usize_lossy(steps - 1);
    let mut radius: Vec<T> = spec
        .lo
        .iter()
        .zip(&spec.hi)
        .map(|(&lo, &hi)| (hi - lo) / denom)
        .collect();
    for _ in 0..spec.refine_rounds {
        let axes: Vec<Vec<T>> = (0..spec.dims())
            .map(|i| {
                let center = best.argmax[i];
                let lo = (center - radius[i]).max(spec.lo[i]);
                let hi = (center + radius[i]).min(spec.hi[i]);
                lattice_axis(lo, hi, steps)
            })
            .collect();
        best = evaluate_lattice(&f, &axes, Some(best))?;
        for r in &mut radius {
            *r = *r * spec.refine_shrink;
        }
    }
    Ok(best)
}

fn lattice_axis<T: Real>(lo: T, hi: T, steps: usize) -> Vec<T> {
    let denom = T::from_usize_lossy(steps - 1);
    (0..steps)
        .map(|k| {
            if k == steps - 1 {
                hi
            } else {
                lo + (hi - lo) * T::from_usize_lossy(k) / denom
            }
        })
        .collect()
}

fn evaluate_lattice<T, F>(f: &F, axes: &[Vec<T>], incumbent: Option<Maximum<T>>) -> Result<Maximum<T>>
where
    T: Real,
    F: Fn(&[T]) -> Result<T> + Sync,
{
    let total: usize = axes.iter().map(Vec::len).product();
    let values: Vec<Result<T>> = (0..total)
        .into_par_iter()
        .map(|idx| f(&lattice_point(axes, idx)))
        .collect();

    let mut best = incumbent;
    for (idx, value) in values.into_iter().enumerate() {
        let value = value?;
        if value.is_nan() {
            return Err(Error::domain("objective value", f64::NAN, "objective returned NaN"));
        }
        let candidate = Maximum {
            argmax: lattice_point(axes, idx),
            value,
        };
        best = Some(match best {
            Some(current) if !ranks_above(&candidate, &current) => current,
            _ => candidate,
        });
    }
    Ok(best.expect("lattice is non-empty"))
}

/// Row-major decode: the first dimension varies slowest, so enumeration order
/// is lexicographic in the argument vector.
fn lattice_point<T: Real>(axes: &[Vec<T>], mut idx: usize) -> Vec<T> {
    let mut point = vec![T::zero(); axes.len()];
    for (slot, axis) in point.iter_mut().zip(axes).rev() {
        *slot = axis[idx % axis.len()];
        idx /= axis.len();
    }
    point
}

/// Values within a few ulps count as ties, so rounding noise (e.g. from
/// rescaling a channel) cannot flip which lattice point wins.
fn tie_tolerance<T: Real>(v: T) -> T {
    T::epsilon() * T::lit(64.0) * v.abs().max(T::one())
}

fn ranks_above<T: Real>(a: &Maximum<T>, b: &Maximum<T>) -> bool {
    let tol = tie_tolerance(b.value);
    if a.value > b.value + tol {
        true
    } else if a.value < b.value - tol {
        false
    } else {
        lex_less(&a.argmax, &b.argmax)
    }
}

fn lex_less<T: Real>(a: &[T], b: &[T]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cap_anchors() {
        assert_eq!(cap(0.0_f64).unwrap(), 0.0);
        assert_eq!(cap(1.0_f64).unwrap(), 1.0);
        assert_eq!(cap(3.0_f64).unwrap(), 2.0);
        assert!(cap(-1e-3_f64).is_err());
        assert!(cap(f64::NAN).is_err());
    }

    #[test]
    fn clamp_plus_cases() {
        assert_eq!(clamp_plus(-0.5_f64), 0.0);
        assert_eq!(clamp_plus(0.0_f64), 0.0);
        assert_eq!(clamp_plus(0.7_f64), 0.7);
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5_f64).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0_f64).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0_f64).unwrap(), 0.0);
        // -0.1 log2 0.1 - 0.9 log2 0.9 evaluated independently
        assert_abs_diff_eq!(
            binary_entropy(0.1_f64).unwrap(),
            0.468_995_593_589_281_2,
            epsilon = 1e-12
        );
        assert!(binary_entropy(1.5_f64).is_err());
        assert!(binary_entropy(-0.1_f64).is_err());
    }

    #[test]
    fn maximize_hits_lattice_optimum() {
        let spec = GridSpec::unit(1).with_steps(11).with_refine_rounds(0);
        let m = maximize(|x: &[f64]| Ok(-(x[0] - 0.3).powi(2)), &spec).unwrap();
        assert_eq!(m.argmax, vec![0.3]);
        assert_eq!(m.value, 0.0);
    }

    #[test]
    fn maximize_constant_breaks_ties_low() {
        let spec = GridSpec::unit(1);
        let m = maximize(|_: &[f64]| Ok(2.0), &spec).unwrap();
        assert_eq!(m.argmax, vec![0.0]);
        assert_eq!(m.value, 2.0);

        let spec = GridSpec::unit(2).with_steps(5);
        let m = maximize(|x: &[f64]| Ok(x[0].min(0.5)), &spec).unwrap();
        assert_eq!(m.argmax, vec![0.5, 0.0]);
    }

    #[test]
    fn maximize_corner() {
        for steps in [2, 7, 101] {
            let spec = GridSpec::unit(2).with_steps(steps);
            let m = maximize(|x: &[f64]| Ok(x[0] + x[1]), &spec).unwrap();
            assert_eq!(m.argmax, vec![1.0, 1.0]);
            assert_eq!(m.value, 2.0);
        }
    }

    #[test]
    fn refinement_improves_off_lattice_optimum() {
        let f = |x: &[f64]| Ok(-(x[0] - 0.123_456).powi(2));
        let coarse = maximize(f, &GridSpec::unit(1).with_steps(11).with_refine_rounds(0)).unwrap();
        let fine = maximize(f, &GridSpec::unit(1).with_steps(11).with_refine_rounds(6)).unwrap();
        assert!(fine.value >= coarse.value);
        assert!((fine.argmax[0] - 0.123_456).abs() < 1e-4);
    }

    #[test]
    fn maximize_rejects_bad_specs() {
        let f = |_: &[f64]| Ok(0.0);
        assert!(maximize(f, &GridSpec::unit(1).with_steps(1)).is_err());
        assert!(maximize(f, &GridSpec::new(vec![1.0], vec![0.0])).is_err());
        let mut spec = GridSpec::unit(1);
        spec.refine_shrink = 1.0;
        assert!(maximize(f, &spec).is_err());
    }

    #[test]
    fn maximize_propagates_errors() {
        let spec = GridSpec::unit(1);
        let r = maximize(|x: &[f64]| cap(x[0] - 0.5), &spec);
        assert!(matches!(r, Err(Error::Domain { .. })));
    }

    #[test]
    fn works_for_f32() {
        let spec = GridSpec::<f32>::unit(1).with_steps(11).with_refine_rounds(0);
        let m = maximize(|x: &[f32]| Ok(-(x[0] - 0.5) * (x[0] - 0.5)), &spec).unwrap();
        assert_eq!(m.argmax, vec![0.5f32]);
        assert_eq!(cap(1.0f32).unwrap(), 1.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn bumpy(x: &[f64], c: &[f64; 4]) -> Result<f64> {
            Ok((c[0] * x[0]).sin() + (c[1] * x[1]).cos() * c[2] - (x[0] - c[3]).powi(2))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn deterministic_and_monotone_in_rounds(
                c in prop::array::uniform4(-6.0f64..6.0),
                steps in 2usize..15,
                rounds in 0usize..5,
            ) {
                let spec = GridSpec::new(vec![-1.0, 0.0], vec![2.0, 1.0]).with_steps(steps).with_refine_rounds(rounds);
                let f = |x: &[f64]| bumpy(x, &c);
                let a = maximize(f, &spec).unwrap();
                let b = maximize(f, &spec).unwrap();
                prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
                prop_assert_eq!(&a.argmax, &b.argmax);

                let more = maximize(f, &spec.clone().with_refine_rounds(rounds + 1)).unwrap();
                prop_assert!(more.value >= a.value - tie_tolerance(a.value));

                // never below any coarse lattice value
                let coarse = maximize(f, &spec.clone().with_refine_rounds(0)).unwrap();
                prop_assert!(a.value >= coarse.value - tie_tolerance(coarse.value));
                for i in 0..steps {
                    for j in 0..steps {
                        let x = [-1.0 + 3.0 * i as f64 / (steps - 1) as f64, j as f64 / (steps - 1) as f64];
                        prop_assert!(coarse.value >= f(&x).unwrap() - tie_tolerance(coarse.value));
                    }
                }
            }
        }
    }
}
