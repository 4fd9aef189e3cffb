use crate::error::{Error, Result};
use crate::gaussian::{Conference, HelperNoiseCredit};
use crate::numerics::clamp_plus;
use crate::scalar::Real;

use super::aux::{InnerAuxDistribution, OuterAuxDistribution};
use super::channel::DiscreteMemorylessChannel;
use super::joint::{var_mask, MiPlan, MiScratch, Var};

/// Secrecy rate `r` and equivocation rate `re`, in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEquivocationPoint<T> {
    pub r: T,
    pub re: T,
}

fn rate_cap<T: Real>(sum: T, private: T, c12: Conference<T>) -> T {
    match c12 {
        Conference::Finite(c) => sum.min(private + c),
        Conference::Infinite => sum,
    }
}

fn plan(labels: &[Var], dims: &[usize], terms: &[(&[Var], &[Var], &[Var])]) -> MiPlan {
    let masks: Vec<(u32, u32, u32)> = terms
        .iter()
        .map(|(a, b, c)| (var_mask(labels, a), var_mask(labels, b), var_mask(labels, c)))
        .collect();
    MiPlan::new(dims, &masks)
}

/// Reusable evaluator of the inner-bound point for one channel and cards.
#[derive(Debug, Clone)]
pub(crate) struct InnerEvaluator {
    plan: MiPlan,
}

impl InnerEvaluator {
    pub(crate) fn new(dims: &[usize]) -> Self {
        use Var::*;
        let l = &InnerAuxDistribution::<f64>::LABELS;
        Self {
            plan: plan(
                l,
                dims,
                &[
                    (&[V1, V2], &[Y], &[U]),
                    (&[V1], &[Y], &[V2, V, U]),
                    (&[V2], &[Y], &[V, U]),
                    (&[V2], &[Z], &[V1, V, U]),
                    (&[V1, V2], &[Z], &[U]),
                ],
            ),
        }
    }

    pub(crate) fn point<T: Real>(
        &self,
        joint: &[T],
        c12: Conference<T>,
        credit: HelperNoiseCredit,
        scratch: &mut MiScratch<T>,
    ) -> RateEquivocationPoint<T> {
        let t = self.plan.evaluate(joint, scratch);
        let (sum_y, private, noise_y, noise_z, leak) = (t[0], t[1], t[2], t[3], t[4]);
        let noise = noise_y.min(noise_z);
        let r = rate_cap(sum_y, private, c12);
        let raw = match credit {
            HelperNoiseCredit::CappedBySumRate => rate_cap(sum_y, noise + private, c12) - leak,
            HelperNoiseCredit::Additive => noise + r - leak,
        };
        RateEquivocationPoint {
            r,
            re: r.min(clamp_plus(raw)),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct OuterEvaluator {
    plan: MiPlan,
}

impl OuterEvaluator {
    pub(crate) fn new(dims: &[usize]) -> Self {
        use Var::*;
        let l = &OuterAuxDistribution::<f64>::LABELS;
        Self {
            plan: plan(
                l,
                dims,
                &[
                    (&[V1, V2], &[Y], &[]),
                    (&[V1], &[Y], &[V2]),
                    (&[V1, V2], &[Y], &[U]),
                    (&[V1], &[Y], &[V2, U]),
                    (&[V1, V2], &[Z], &[U]),
                ],
            ),
        }
    }

    pub(crate) fn point<T: Real>(
        &self,
        joint: &[T],
        c12: Conference<T>,
        scratch: &mut MiScratch<T>,
    ) -> RateEquivocationPoint<T> {
        let t = self.plan.evaluate(joint, scratch);
        let (sum_y, private, sum_y_u, private_u, leak_u) = (t[0], t[1], t[2], t[3], t[4]);
        let r = rate_cap(sum_y, private, c12);
        let raw = rate_cap(sum_y_u, private_u, c12) - leak_u;
        RateEquivocationPoint {
            r,
            re: r.min(clamp_plus(raw)),
        }
    }
}

/// Helper-interference wiretap objective, on the inner layout with unary `U`, `V`.
#[derive(Debug, Clone)]
pub(crate) struct WthiEvaluator {
    plan: MiPlan,
}

impl WthiEvaluator {
    pub(crate) fn new(dims: &[usize]) -> Self {
        use Var::*;
        let l = &InnerAuxDistribution::<f64>::LABELS;
        Self {
            plan: plan(
                l,
                dims,
                &[
                    (&[V1, V2], &[Y], &[]),
                    (&[V1, V2], &[Z], &[]),
                    (&[V1], &[Y], &[V2]),
                    (&[V1], &[Z], &[]),
                ],
            ),
        }
    }

    pub(crate) fn value<T: Real>(&self, joint: &[T], scratch: &mut MiScratch<T>) -> T {
        let t = self.plan.evaluate(joint, scratch);
        clamp_plus((t[0] - t[1]).min(t[2] - t[3]))
    }
}

/// Achievable `(r, re)` pair for one inner auxiliary distribution.
pub fn inner_bound_point<T: Real>(
    dist: &InnerAuxDistribution<T>,
    ch: &DiscreteMemorylessChannel<T>,
    c12: Conference<T>,
    credit: HelperNoiseCredit,
) -> Result<RateEquivocationPoint<T>> {
    c12.validate()?;
    dist.check_against(ch)?;
    let mut joint = Vec::new();
    dist.fill_joint(ch, &mut joint);
    let eval = InnerEvaluator::new(&dist.dims(ch));
    Ok(eval.point(&joint, c12, credit, &mut MiScratch::default()))
}

/// Outer-bound `(r, re)` pair for one outer auxiliary distribution.
pub fn outer_bound_point<T: Real>(
    dist: &OuterAuxDistribution<T>,
    ch: &DiscreteMemorylessChannel<T>,
    c12: Conference<T>,
) -> Result<RateEquivocationPoint<T>> {
    c12.validate()?;
    dist.check_against(ch)?;
    let mut joint = Vec::new();
    dist.fill_joint(ch, &mut joint);
    let eval = OuterEvaluator::new(&dist.dims(ch));
    Ok(eval.point(&joint, c12, &mut MiScratch::default()))
}

/// Secrecy rate of the wiretap scheme where encoder 2 only sends
/// interference. `U` and `V` must be unary.
pub fn wthi_objective<T: Real>(dist: &InnerAuxDistribution<T>, ch: &DiscreteMemorylessChannel<T>) -> Result<T> {
    if dist.n_u != 1 || dist.n_v != 1 {
        return Err(Error::Config(format!(
            "helper-interference objective needs unary U and V, got |U| = {}, |V| = {}",
            dist.n_u, dist.n_v
        )));
    }
    dist.check_against(ch)?;
    let mut joint = Vec::new();
    dist.fill_joint(ch, &mut joint);
    Ok(WthiEvaluator::new(&dist.dims(ch)).value(&joint, &mut MiScratch::default()))
}
