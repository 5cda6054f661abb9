//! Quadrature: adaptive Gauss-Kronrod on intervals, whole-line truncation by
//! decay class, half-period panels for oscillatory weights, and nested or
//! Monte Carlo integration over the simplex chart of a correlation kernel.

mod adaptive;
mod integrand;
mod oscillatory;
mod simplex;

pub(crate) use adaptive::{WG, WGK, XGK};
pub use adaptive::{gk21, integrate_adaptive, integrate_interval, AdaptiveOptions, DEFAULT_MAX_PANELS};
pub use integrand::{integrate_line, Decay, Integrand, Support};
pub use oscillatory::{integrate_oscillatory, Oscillation};
pub use simplex::{integrate_simplex, SimplexIntegrand, DEFAULT_MC_SAMPLES, DEFAULT_SEED};

use crate::scalar::Real;

/// Integral estimate with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: T,
    pub evaluations: usize,
}

impl<T: Real> QuadResult<T> {
    pub(crate) fn zero() -> Self {
        Self { value: T::zero(), abs_error: T::zero(), evaluations: 1 }
    }

    pub(crate) fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

/// Sorts, deduplicates and clips breakpoints to the open interval `(a, b)`,
/// returning the full list of panel edges including `a` and `b`.
pub(crate) fn panel_edges<T: Real>(a: T, b: T, points: &[T]) -> Vec<T> {
    let mut edges: Vec<T> = points.iter().copied().filter(|&p| p > a && p < b && p.is_finite()).collect();
    edges.push(a);
    edges.push(b);
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let min_gap = (b - a) * T::epsilon() * T::lit(16.0);
    edges.dedup_by(|x, y| (*x - *y).abs() <= min_gap);
    if let Some(last) = edges.last_mut() {
        *last = b;
    }
    edges
}
