use super::adaptive::{integrate_adaptive, AdaptiveOptions};
use super::integrand::Integrand;
use super::{panel_edges, QuadResult};
use crate::error::{precondition, Result};
use crate::scalar::Real;

/// Trigonometric weight of an oscillatory integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oscillation {
    Cos,
    Sin,
}

impl Oscillation {
    #[inline]
    fn apply<T: Real>(self, x: T) -> T {
        match self {
            Oscillation::Cos => x.cos(),
            Oscillation::Sin => x.sin(),
        }
    }
}

/// `sum_{k<n} a_k`, extrapolated by repeated Aitken delta-squared steps on
/// the partial sums.
fn aitken_limit<T: Real>(partial: &[T]) -> Option<T> {
    if partial.len() < 3 {
        return None;
    }
    let mut s: Vec<T> = partial.to_vec();
    while s.len() >= 3 {
        let mut next = Vec::with_capacity(s.len() - 2);
        for w in s.windows(3) {
            let d = w[2] - T::lit(2.0) * w[1] + w[0];
            if d == T::zero() || !d.is_finite() {
                next.push(w[2]);
            } else {
                next.push(w[2] - (w[2] - w[1]) * (w[2] - w[1]) / d);
            }
        }
        s = next;
    }
    s.last().copied()
}

/// `int f(t) cos(omega t) dt` (or `sin`).
///
/// When `omega` times the support length exceeds 8, the range is cut into
/// half-period panels aligned with the zeros of the weight. If the support
/// could not be truncated below the tail tolerance the panel sums are
/// extrapolated with iterated Aitken.
pub fn integrate_oscillatory<T: Real, F: Fn(T) -> T>(
    f: &Integrand<T, F>,
    omega: T,
    kind: Oscillation,
    tol: T,
) -> Result<QuadResult<T>> {
    if !(omega >= T::zero()) {
        return Err(precondition("omega must be nonnegative"));
    }
    if !(tol > T::zero()) {
        return Err(precondition("tolerance must be positive"));
    }
    let (lo, hi, tail_ok) = f.truncation(tol)?;
    let g = |t: T| f.eval(t) * kind.apply(omega * t);
    let opts = AdaptiveOptions::new(tol).with_smooth_endpoints(f.singular_endpoints());
    if omega * (hi - lo) <= T::lit(8.0) {
        return integrate_adaptive(&g, lo, hi, f.breakpoints(), opts);
    }
    let half_period = T::PI() / omega;
    let phase = match kind {
        Oscillation::Cos => T::lit(0.5) * half_period,
        Oscillation::Sin => T::zero(),
    };
    let first = ((lo - phase) / half_period).ceil();
    let mut zeros = Vec::new();
    let mut k = first;
    loop {
        let z = phase + k * half_period;
        if z >= hi {
            break;
        }
        zeros.push(z);
        k = k + T::one();
    }
    let panels = zeros.len() + 1;
    let panel_opts = AdaptiveOptions {
        abs_tol: tol / T::from_usize_lossy(panels),
        rel_tol: tol,
        max_panels: opts.max_panels,
        smooth_endpoints: opts.smooth_endpoints,
    };
    let mut edges = zeros;
    edges.push(lo);
    edges.push(hi);
    let edges = panel_edges(lo, hi, &edges);
    let mut total = QuadResult { value: T::zero(), abs_error: T::zero(), evaluations: 0 };
    let mut partial = Vec::with_capacity(edges.len());
    for w in edges.windows(2) {
        let inner: Vec<T> = f.breakpoints().iter().copied().filter(|&p| p > w[0] && p < w[1]).collect();
        let r = integrate_adaptive(&g, w[0], w[1], &inner, panel_opts)?;
        total = total.add(r);
        partial.push(total.value);
    }
    if !tail_ok {
        let tail = &partial[partial.len().saturating_sub(9)..];
        if let Some(lim) = aitken_limit(tail) {
            total.abs_error = total.abs_error + (lim - total.value).abs();
            total.value = lim;
        }
    }
    Ok(total)
}
