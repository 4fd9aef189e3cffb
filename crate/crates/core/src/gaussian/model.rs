//! Channel and geometry types for the two-encoder Gaussian MAC with an
//! eavesdropper.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Capacity of the conferencing link from Encoder 1 to Encoder 2, in bits per
/// channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Conference<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> Conference<T> {
    pub fn finite(&self) -> Option<T> {
        match *self {
            Conference::Finite(c) => Some(c),
            Conference::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Conference::Infinite)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Conference::Finite(c) if !(c >= T::zero()) || !c.is_finite() => {
                Err(Error::domain("c12", c.to_f64_lossy(), "must be >= 0 or infinite"))
            }
            _ => Ok(()),
        }
    }

    /// `self + x`, saturating at infinity.
    pub fn plus(&self, x: T) -> Conference<T> {
        match *self {
            Conference::Finite(c) => Conference::Finite(c + x),
            Conference::Infinite => Conference::Infinite,
        }
    }

    /// Total order used for sweep rows: finite values ascending, infinity last.
    pub fn sort_key(&self) -> (bool, T) {
        match *self {
            Conference::Finite(c) => (false, c),
            Conference::Infinite => (true, T::zero()),
        }
    }
}

impl<T: Real> fmt::Display for Conference<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conference::Finite(c) => f.write_str(&crate::format::fmt_sig(*c)),
            Conference::Infinite => f.write_str("inf"),
        }
    }
}

/// `Y = h1d X1 + h2d X2 + N1`, `Z = h1e X1 + h2e X2 + N2`.
///
/// Gains are signed reals; path-loss geometries only produce positive ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMacChannel<T> {
    pub h1d: T,
    pub h2d: T,
    pub h1e: T,
    pub h2e: T,
    /// Noise variance at the destination.
    pub sigma1_sq: T,
    /// Noise variance at the eavesdropper.
    pub sigma2_sq: T,
    pub p1: T,
    pub p2: T,
    pub c12: Conference<T>,
}

impl<T: Real> GaussianMacChannel<T> {
    /// Unit powers, unit noise variances and no conferencing.
    pub fn with_gains(h1d: T, h2d: T, h1e: T, h2e: T) -> Self {
        Self {
            h1d,
            h2d,
            h1e,
            h2e,
            sigma1_sq: T::one(),
            sigma2_sq: T::one(),
            p1: T::one(),
            p2: T::one(),
            c12: Conference::Finite(T::zero()),
        }
    }

    pub fn with_c12(mut self, c12: Conference<T>) -> Self {
        self.c12 = c12;
        self
    }

    pub fn with_powers(mut self, p1: T, p2: T) -> Self {
        self.p1 = p1;
        self.p2 = p2;
        self
    }

    pub fn with_noise(mut self, sigma1_sq: T, sigma2_sq: T) -> Self {
        self.sigma1_sq = sigma1_sq;
        self.sigma2_sq = sigma2_sq;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (what, g) in [
            ("h1d", self.h1d),
            ("h2d", self.h2d),
            ("h1e", self.h1e),
            ("h2e", self.h2e),
        ] {
            if !g.is_finite() {
                return Err(Error::domain(what, g.to_f64_lossy(), "must be finite"));
            }
        }
        for (what, s) in [("sigma1_sq", self.sigma1_sq), ("sigma2_sq", self.sigma2_sq)] {
            if !(s > T::zero()) || !s.is_finite() {
                return Err(Error::domain(what, s.to_f64_lossy(), "must be > 0"));
            }
        }
        for (what, p) in [("p1", self.p1), ("p2", self.p2)] {
            if !(p >= T::zero()) || !p.is_finite() {
                return Err(Error::domain(what, p.to_f64_lossy(), "must be >= 0"));
            }
        }
        self.c12.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Planar node placement with distance-dependent path loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkGeometry<T> {
    pub pos_enc1: Point2<T>,
    pub pos_enc2: Point2<T>,
    pub pos_dest: Point2<T>,
    pub pos_eave: Point2<T>,
    /// Path-loss exponent.
    pub gamma: T,
    pub p1: T,
    pub p2: T,
    pub sigma1_sq: T,
    pub sigma2_sq: T,
    pub c12: Conference<T>,
    /// Distances below this are clamped before the path loss is applied.
    pub min_distance: T,
}

impl<T: Real> NetworkGeometry<T> {
    pub const DEFAULT_MIN_DISTANCE: f64 = 0.01;

    /// Encoder 1 at the origin, Encoder 2 at `(d, 0)`, destination at
    /// `(1, 0)`, eavesdropper at `(1.5, 0)`; gamma = 2, unit powers and noise.
    pub fn reference(d: T) -> Self {
        Self {
            pos_enc1: Point2::new(T::zero(), T::zero()),
            pos_enc2: Point2::new(d, T::zero()),
            pos_dest: Point2::new(T::one(), T::zero()),
            pos_eave: Point2::new(T::lit(1.5), T::zero()),
            gamma: T::lit(2.0),
            p1: T::one(),
            p2: T::one(),
            sigma1_sq: T::one(),
            sigma2_sq: T::one(),
            c12: Conference::Finite(T::zero()),
            min_distance: T::lit(Self::DEFAULT_MIN_DISTANCE),
        }
    }

    /// Same as [`NetworkGeometry::reference`] with destination and
    /// eavesdropper swapped.
    pub fn reversed_reference(d: T) -> Self {
        let mut g = Self::reference(d);
        std::mem::swap(&mut g.pos_dest, &mut g.pos_eave);
        g
    }

    pub fn with_enc2(mut self, pos: Point2<T>) -> Self {
        self.pos_enc2 = pos;
        self
    }

    pub fn with_c12(mut self, c12: Conference<T>) -> Self {
        self.c12 = c12;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > T::zero()) {
            return Err(Error::domain("gamma", self.gamma.to_f64_lossy(), "must be > 0"));
        }
        if !(self.min_distance > T::zero()) {
            return Err(Error::domain(
                "min_distance",
                self.min_distance.to_f64_lossy(),
                "must be > 0",
            ));
        }
        Ok(())
    }

    /// Compiles node positions into channel gains; powers, noise and the
    /// conferencing capacity are copied through.
    pub fn compile(&self) -> Result<GaussianMacChannel<T>> {
        self.validate()?;
        let gain = |a: &Point2<T>, b: &Point2<T>| path_loss_gain(a.distance(b), self.gamma, self.min_distance);
        let ch = GaussianMacChannel {
            h1d: gain(&self.pos_enc1, &self.pos_dest)?,
            h2d: gain(&self.pos_enc2, &self.pos_dest)?,
            h1e: gain(&self.pos_enc1, &self.pos_eave)?,
            h2e: gain(&self.pos_enc2, &self.pos_eave)?,
            sigma1_sq: self.sigma1_sq,
            sigma2_sq: self.sigma2_sq,
            p1: self.p1,
            p2: self.p2,
            c12: self.c12,
        };
        ch.validate()?;
        Ok(ch)
    }
}

/// `max(distance, min_distance)^(-gamma/2)`.
pub fn path_loss_gain<T: Real>(distance: T, gamma: T, min_distance: T) -> Result<T> {
    if !(gamma > T::zero()) {
        return Err(Error::domain("gamma", gamma.to_f64_lossy(), "must be > 0"));
    }
    if !(min_distance > T::zero()) {
        return Err(Error::domain(
            "min_distance",
            min_distance.to_f64_lossy(),
            "must be > 0",
        ));
    }
    if !distance.is_finite() {
        return Err(Error::domain("distance", distance.to_f64_lossy(), "must be finite"));
    }
    Ok(distance.max(min_distance).powf(-gamma / T::lit(2.0)))
}

pub fn compile_geometry<T: Real>(g: &NetworkGeometry<T>) -> Result<GaussianMacChannel<T>> {
    g.compile()
}
