//! Central finite-difference stencils.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_STEP: f64 = 1e-4;
pub const MAX_STEP: f64 = 1e-1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StencilOrder {
    #[serde(rename = "2")]
    Second,
    #[serde(rename = "4")]
    Fourth,
}

impl StencilOrder {
    pub fn from_int(order: u32) -> Result<Self> {
        match order {
            2 => Ok(StencilOrder::Second),
            4 => Ok(StencilOrder::Fourth),
            other => Err(Error::InvalidStencil(format!("order must be 2 or 4, got {other}"))),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            StencilOrder::Second => 2,
            StencilOrder::Fourth => 4,
        }
    }
}

/// Step length (radians, or geodesic length along a unit direction) and
/// accuracy order of the central stencils.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StencilConfig {
    pub h: f64,
    pub order: StencilOrder,
}

impl Default for StencilConfig {
    fn default() -> Self {
        StencilConfig { h: 1e-2, order: StencilOrder::Fourth }
    }
}

impl StencilConfig {
    pub fn new(h: f64, order: StencilOrder) -> Result<Self> {
        if !(MIN_STEP..=MAX_STEP).contains(&h) {
            return Err(Error::InvalidStencil(format!(
                "step {h:e} outside [{MIN_STEP:e}, {MAX_STEP:e}]"
            )));
        }
        Ok(StencilConfig { h, order })
    }

    /// Second-order stencil with `h = 1e-3`, for cross-checking the default.
    pub fn coarse_check() -> Self {
        StencilConfig { h: 1e-3, order: StencilOrder::Second }
    }

    /// `(offset multiplier, integer weight)` pairs for `f''` and their
    /// common divisor, before dividing by `h^2`.
    fn second_weights(self) -> (&'static [(f64, f64)], f64) {
        match self.order {
            StencilOrder::Second => (&[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)], 1.0),
            StencilOrder::Fourth => (&[(-2.0, -1.0), (-1.0, 16.0), (0.0, -30.0), (1.0, 16.0), (2.0, -1.0)], 12.0),
        }
    }

    fn first_weights(self) -> (&'static [(f64, f64)], f64) {
        match self.order {
            StencilOrder::Second => (&[(-1.0, -1.0), (1.0, 1.0)], 2.0),
            StencilOrder::Fourth => (&[(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)], 12.0),
        }
    }

    /// Estimate `f''(0)` with step `step` (not necessarily `self.h`).
    pub fn second_derivative_with<T, F>(self, step: f64, f: F) -> T
    where
        T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        combine(self.second_weights(), step, &f) * (1.0 / (step * step))
    }

    pub fn second_derivative<T, F>(self, f: F) -> T
    where
        T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        self.second_derivative_with(self.h, f)
    }

    pub fn first_derivative<T, F>(self, f: F) -> T
    where
        T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        combine(self.first_weights(), self.h, &f) * (1.0 / self.h)
    }
}

fn combine<T, F>((weights, divisor): (&[(f64, f64)], f64), step: f64, f: &F) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let mut terms = weights.iter().map(|&(k, w)| f(k * step) * w);
    let first = terms.next().expect("stencil has at least one point");
    terms.fold(first, |acc, t| acc + t) * (1.0 / divisor)
}
