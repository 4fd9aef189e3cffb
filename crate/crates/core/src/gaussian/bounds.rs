//! Upper and lower bounds on the perfect-secrecy capacity of the Gaussian
//! MAC, plus the two extreme-cooperation cases.

use crate::error::{Error, Result};
use crate::gaussian::model::{Conference, GaussianMacChannel};
use crate::numerics::{cap, clamp_plus, maximize, GridSpec};
use crate::scalar::Real;

/// How the helper's noise-forwarding rate enters the secrecy rate.
///
/// `CappedBySumRate` credits the noise codeword only inside the
/// private-plus-conference branch of the rate minimum, so the secrecy rate
/// never exceeds `C(S_d) - C(S_e)` for the induced input correlation.
/// `Additive` adds the credit outside the minimum; with the helper's noise
/// counted twice it can exceed the upper bound once `c12 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HelperNoiseCredit {
    #[default]
    CappedBySumRate,
    Additive,
}

/// Power fractions of the lower-bound scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundParams<T> {
    /// Fraction of `P1` spent on Encoder 1's private signal.
    pub alpha: T,
    /// Fraction of `P2` spent on artificial noise.
    pub beta: T,
}

impl<T: Real> LowerBoundParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let p = Self { alpha, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v >= T::zero() && v <= T::one()) {
                return Err(Error::domain(what, v.to_f64_lossy(), "must lie in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// Split of Encoder 2's power between artificial noise and the conferenced
/// (common) signal, in watt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit<T> {
    pub noise_power: T,
    pub conf_power: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    /// Bound in bits per channel use, clamped at zero.
    pub value: T,
    /// Objective at the argmax before clamping.
    pub raw_value: T,
    /// `[psi]` for the upper bound, `[alpha, beta]` for the lower bound,
    /// `[E X1^2, E X2^2]` for the non-conferencing bounds.
    pub argmax: Vec<T>,
    pub power_split: Option<PowerSplit<T>>,
}

/// Optimizer resolution and scheme variant used by the bound searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSettings<T> {
    pub coarse_steps: usize,
    pub refine_rounds: usize,
    pub refine_shrink: T,
    pub noise_credit: HelperNoiseCredit,
}

impl<T: Real> Default for BoundSettings<T> {
    fn default() -> Self {
        Self {
            coarse_steps: 201,
            refine_rounds: 4,
            refine_shrink: T::lit(0.25),
            noise_credit: HelperNoiseCredit::default(),
        }
    }
}

impl<T: Real> BoundSettings<T> {
    pub fn grid(&self, lo: Vec<T>, hi: Vec<T>) -> GridSpec<T> {
        GridSpec {
            lo,
            hi,
            coarse_steps: self.coarse_steps,
            refine_rounds: self.refine_rounds,
            refine_shrink: self.refine_shrink,
        }
    }
}

/// Received signal power `g1^2 P1 + g2^2 P2 + 2 psi g1 g2 sqrt(P1 P2)`.
fn correlated_power<T: Real>(g1: T, g2: T, p1: T, p2: T, psi: T) -> Result<T> {
    let a = g1 * p1.sqrt();
    let b = g2 * p2.sqrt();
    let s = a * a + b * b + T::lit(2.0) * psi * a * b;
    if s >= T::zero() {
        return Ok(s);
    }
    // |psi| <= 1 makes s >= (|a| - |b|)^2 >= 0; only rounding can land here
    let slack = T::epsilon() * T::lit(16.0) * (a * a + b * b);
    if s >= -slack {
        Ok(T::zero())
    } else {
        Err(Error::domain(
            "received power",
            s.to_f64_lossy(),
            "negative despite |psi| <= 1",
        ))
    }
}

/// `I(X1,X2;Y) - I(X1,X2;Z)` for jointly Gaussian inputs with correlation
/// coefficient `psi`, unclamped.
pub fn upper_bound_value<T: Real>(ch: &GaussianMacChannel<T>, psi: T) -> Result<T> {
    if !(psi.abs() <= T::one()) {
        return Err(Error::domain("psi", psi.to_f64_lossy(), "must lie in [-1, 1]"));
    }
    let s_d = correlated_power(ch.h1d, ch.h2d, ch.p1, ch.p2, psi)?;
    let s_e = correlated_power(ch.h1e, ch.h2e, ch.p1, ch.p2, psi)?;
    Ok(cap(s_d / ch.sigma1_sq)? - cap(s_e / ch.sigma2_sq)?)
}

/// Upper bound: the best input correlation `psi` in `[-1, 1]`.
pub fn upper_bound<T: Real>(ch: &GaussianMacChannel<T>) -> Result<BoundReport<T>> {
    upper_bound_with(ch, &BoundSettings::default())
}

pub fn upper_bound_with<T: Real>(ch: &GaussianMacChannel<T>, settings: &BoundSettings<T>) -> Result<BoundReport<T>> {
    ch.validate()?;
    let grid = settings.grid(vec![-T::one()], vec![T::one()]);
    let best = maximize(|x: &[T]| upper_bound_value(ch, x[0]), &grid)?;
    Ok(BoundReport {
        value: clamp_plus(best.value),
        raw_value: best.value,
        argmax: best.argmax,
        power_split: None,
    })
}

/// Secrecy rate of the conferencing / noise-injection scheme at fixed power
/// fractions, clamped at zero.
pub fn lower_bound_value<T: Real>(ch: &GaussianMacChannel<T>, params: LowerBoundParams<T>) -> Result<T> {
    lower_bound_value_with(ch, params, HelperNoiseCredit::default())
}

pub fn lower_bound_value_with<T: Real>(
    ch: &GaussianMacChannel<T>,
    params: LowerBoundParams<T>,
    credit: HelperNoiseCredit,
) -> Result<T> {
    params.validate()?;
    let LowerBoundParams { alpha, beta } = params;
    let two = T::lit(2.0);
    let g1d = ch.h1d * ch.h1d * ch.p1;
    let g2d = ch.h2d * ch.h2d * ch.p2;
    let g1e = ch.h1e * ch.h1e * ch.p1;
    let g2e = ch.h2e * ch.h2e * ch.p2;
    let shared = (T::one() - alpha) * (T::one() - beta);

    let noise = cap(beta * g2d / (ch.sigma1_sq + alpha * g1d))?.min(cap(beta * g2e / ch.sigma2_sq)?);
    let private = cap(alpha * g1d / ch.sigma1_sq)?;
    let sum_d = cap((g1d + g2d + two * (shared * g1d * g2d).sqrt()) / ch.sigma1_sq)?;
    let sum_e = cap((g1e + g2e + two * (shared * g1e * g2e).sqrt()) / ch.sigma2_sq)?;

    let rate = match credit {
        HelperNoiseCredit::CappedBySumRate => match ch.c12 {
            Conference::Finite(c) => (noise + private + c).min(sum_d),
            Conference::Infinite => sum_d,
        },
        HelperNoiseCredit::Additive => {
            let limited = match ch.c12 {
                Conference::Finite(c) => (private + c).min(sum_d),
                Conference::Infinite => sum_d,
            };
            noise + limited
        }
    };
    Ok(clamp_plus(rate - sum_e))
}

/// Lower bound: the best `(alpha, beta)` in the unit square.
pub fn lower_bound<T: Real>(ch: &GaussianMacChannel<T>) -> Result<BoundReport<T>> {
    lower_bound_with(ch, &BoundSettings::default())
}

pub fn lower_bound_with<T: Real>(ch: &GaussianMacChannel<T>, settings: &BoundSettings<T>) -> Result<BoundReport<T>> {
    ch.validate()?;
    let grid = settings.grid(vec![T::zero(); 2], vec![T::one(); 2]);
    let credit = settings.noise_credit;
    let best = maximize(
        |x: &[T]| {
            let params = LowerBoundParams {
                alpha: x[0],
                beta: x[1],
            };
            lower_bound_value_with(ch, params, credit)
        },
        &grid,
    )?;
    let beta = best.argmax[1];
    Ok(BoundReport {
        value: clamp_plus(best.value),
        raw_value: best.value,
        power_split: Some(PowerSplit {
            noise_power: beta * ch.p2,
            conf_power: (T::one() - beta) * ch.p2,
        }),
        argmax: best.argmax,
    })
}

fn check_power_box<T: Real>(ch: &GaussianMacChannel<T>, x1: T, x2: T) -> Result<()> {
    if !(x1 >= T::zero() && x1 <= ch.p1) {
        return Err(Error::domain("x1", x1.to_f64_lossy(), "must lie in [0, P1]"));
    }
    if !(x2 >= T::zero() && x2 <= ch.p2) {
        return Err(Error::domain("x2", x2.to_f64_lossy(), "must lie in [0, P2]"));
    }
    Ok(())
}

/// Without conferencing: Encoder 1 at power `x1`, the eavesdropper treating
/// Encoder 2's power-`x2` signal as noise.
pub fn c12_zero_bound_value<T: Real>(ch: &GaussianMacChannel<T>, x1: T, x2: T) -> Result<T> {
    check_power_box(ch, x1, x2)?;
    let to_dest = cap(ch.h1d * ch.h1d * x1 / ch.sigma1_sq)?;
    let to_eave = cap(ch.h1e * ch.h1e * x1 / (ch.sigma2_sq + ch.h2e * ch.h2e * x2))?;
    Ok(clamp_plus(to_dest - to_eave))
}

/// Whether the destination can decode the helper's noise at least as well as
/// the eavesdropper, compared on SNRs.
pub fn c12_zero_condition<T: Real>(ch: &GaussianMacChannel<T>, x1: T, x2: T) -> Result<bool> {
    check_power_box(ch, x1, x2)?;
    let at_dest = ch.h2d * ch.h2d * x2 / (ch.h1d * ch.h1d * x1 + ch.sigma1_sq);
    let at_eave = ch.h2e * ch.h2e * x2 / ch.sigma2_sq;
    Ok(at_dest >= at_eave)
}

#[derive(Debug, Clone, PartialEq)]
pub struct C12ZeroBounds<T> {
    pub upper: BoundReport<T>,
    pub lower: BoundReport<T>,
    /// The upper bound's maximizer satisfies the decodability condition.
    pub coincide: bool,
}

impl<T: Real> C12ZeroBounds<T> {
    /// The secrecy capacity when the bounds coincide.
    pub fn capacity(&self) -> Option<T> {
        self.coincide.then_some(self.upper.value)
    }
}

/// Both non-conferencing bounds; the channel's own `c12` is ignored.
pub fn c12_zero_bounds<T: Real>(ch: &GaussianMacChannel<T>) -> Result<C12ZeroBounds<T>> {
    c12_zero_bounds_with(ch, &BoundSettings::default())
}

pub fn c12_zero_bounds_with<T: Real>(
    ch: &GaussianMacChannel<T>,
    settings: &BoundSettings<T>,
) -> Result<C12ZeroBounds<T>> {
    let ch = ch.with_c12(Conference::Finite(T::zero()));
    ch.validate()?;
    let grid = settings.grid(vec![T::zero(); 2], vec![ch.p1, ch.p2]);

    let upper = maximize(|x: &[T]| c12_zero_bound_value(&ch, x[0], x[1]), &grid)?;
    // infeasible points score below every feasible (nonnegative) value;
    // x2 = 0 is always feasible
    let lower = maximize(
        |x: &[T]| {
            if c12_zero_condition(&ch, x[0], x[1])? {
                c12_zero_bound_value(&ch, x[0], x[1])
            } else {
                Ok(-T::one())
            }
        },
        &grid,
    )?;
    let coincide = c12_zero_condition(&ch, upper.argmax[0], upper.argmax[1])?;
    let report = |m: crate::numerics::Maximum<T>| BoundReport {
        value: clamp_plus(m.value),
        raw_value: m.value,
        argmax: m.argmax,
        power_split: None,
    };
    Ok(C12ZeroBounds {
        upper: report(upper),
        lower: report(lower),
        coincide,
    })
}

/// Secrecy capacity with fully cooperating encoders; the same optimization
/// as [`upper_bound`].
pub fn full_cooperation_capacity<T: Real>(ch: &GaussianMacChannel<T>) -> Result<BoundReport<T>> {
    full_cooperation_capacity_with(ch, &BoundSettings::default())
}

pub fn full_cooperation_capacity_with<T: Real>(
    ch: &GaussianMacChannel<T>,
    settings: &BoundSettings<T>,
) -> Result<BoundReport<T>> {
    upper_bound_with(&ch.with_c12(Conference::Infinite), settings)
}
