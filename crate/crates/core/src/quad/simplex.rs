use std::cell::{Cell, RefCell};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::adaptive::{integrate_adaptive, AdaptiveOptions};
use super::QuadResult;
use crate::error::{precondition, Error, Result};
use crate::scalar::Real;

/// Monte Carlo sample cap.
pub const DEFAULT_MC_SAMPLES: usize = 10_000_000;
/// Monte Carlo seed used unless overridden.
pub const DEFAULT_SEED: u64 = 0x00c0_4401_2e1a_7e5d;

const NESTED_MAX_POINTS: usize = 4;
const STRATA: usize = 64;
const MIN_MC_SAMPLES: usize = 1 << 17;

/// Integrand on the hyperplane `s_1 + ... + s_n = t`, charted by
/// `s_1..s_{n-1}` with `s_n = t - sum`. Every coordinate lives in `[lo, hi]`.
pub struct SimplexIntegrand<T, G> {
    f: G,
    lo: T,
    hi: T,
    kinks: Vec<T>,
    seed: u64,
    max_samples: usize,
    smooth_endpoints: bool,
}

impl<T: Real, G: Fn(&[T]) -> T> SimplexIntegrand<T, G> {
    /// `f` receives all `n` coordinates.
    pub fn new(f: G, lo: T, hi: T) -> Self {
        Self { f, lo, hi, kinks: Vec::new(), seed: DEFAULT_SEED, max_samples: DEFAULT_MC_SAMPLES, smooth_endpoints: false }
    }

    /// Interior points where the one-point factor has a derivative jump.
    pub fn with_kinks(mut self, kinks: impl IntoIterator<Item = T>) -> Self {
        self.kinks.extend(kinks);
        self
    }

    /// Use the endpoint map of [`AdaptiveOptions`] for integrable power
    /// singularities at the kinks.
    pub fn with_smooth_endpoints(mut self, on: bool) -> Self {
        self.smooth_endpoints = on;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_samples(mut self, max_samples: usize) -> Self {
        self.max_samples = max_samples.max(1);
        self
    }

    fn knots(&self) -> Vec<T> {
        let mut k = self.kinks.clone();
        k.push(self.lo);
        k.push(self.hi);
        k
    }
}

/// Integral over the simplex chart in Lebesgue measure `ds_1..ds_{n-1}`.
///
/// `n = 2` is a single adaptive integral, `n = 3, 4` nest adaptive rules
/// with tolerance `tol/(n-1)` per level, and `n >= 5` uses stratified Monte
/// Carlo whose standard error is reported as the error estimate.
pub fn integrate_simplex<T: Real, G: Fn(&[T]) -> T>(
    g: &SimplexIntegrand<T, G>,
    n: usize,
    t: T,
    tol: T,
) -> Result<QuadResult<T>> {
    if n < 2 {
        return Err(precondition("simplex integration needs n >= 2"));
    }
    if !(tol > T::zero()) {
        return Err(precondition("tolerance must be positive"));
    }
    if !(g.lo < g.hi) {
        return Err(precondition("simplex coordinate range must be nonempty"));
    }
    if n <= NESTED_MAX_POINTS {
        let failure = RefCell::new(None);
        let evals = Cell::new(0usize);
        let level_tol = tol / T::from_usize_lossy(n - 1);
        let r = nested(g, [T::zero(); NESTED_MAX_POINTS], 0, n, t, level_tol, &failure, &evals)?;
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        return Ok(QuadResult { evaluations: evals.get().max(1), ..r });
    }
    monte_carlo(g, n, t, tol)
}

/// Breakpoints for the outer coordinate when `m - 1` points remain to
/// absorb `r`: every `r - (k_1 + ... + k_{m-1})` with `k_i` knots.
fn outer_breakpoints<T: Real>(knots: &[T], m: usize, r: T) -> Vec<T> {
    let mut sums = vec![T::zero()];
    for _ in 0..(m - 1) {
        let mut next = Vec::with_capacity(sums.len() * knots.len());
        for &s in &sums {
            for &k in knots {
                next.push(s + k);
            }
        }
        next.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        next.dedup();
        sums = next;
    }
    let mut out: Vec<T> = sums.into_iter().map(|s| r - s).collect();
    out.extend_from_slice(knots);
    out.push(r / T::from_usize_lossy(m));
    out
}

#[allow(clippy::too_many_arguments)]
fn nested<T: Real, G: Fn(&[T]) -> T>(
    g: &SimplexIntegrand<T, G>,
    prefix: [T; NESTED_MAX_POINTS],
    depth: usize,
    n: usize,
    r: T,
    tol: T,
    failure: &RefCell<Option<Error>>,
    evals: &Cell<usize>,
) -> Result<QuadResult<T>> {
    let m = n - depth;
    let m1 = T::from_usize_lossy(m - 1);
    let a = g.lo.max(r - m1 * g.hi);
    let b = g.hi.min(r - m1 * g.lo);
    if !(a < b) {
        return Ok(QuadResult::zero());
    }
    let bps = outer_breakpoints(&g.knots(), m, r);
    let opts = AdaptiveOptions::new(tol).with_smooth_endpoints(g.smooth_endpoints);
    if m == 2 {
        let h = |s: T| {
            let mut p = prefix;
            p[depth] = s;
            p[depth + 1] = r - s;
            evals.set(evals.get() + 1);
            (g.f)(&p[..n])
        };
        return integrate_adaptive(&h, a, b, &bps, opts);
    }
    let h = |s: T| {
        let mut p = prefix;
        p[depth] = s;
        match nested(g, p, depth + 1, n, r - s, tol, failure, evals) {
            Ok(q) => q.value,
            Err(e) => {
                if let Error::NoConvergence { estimate, .. } = e {
                    failure.borrow_mut().get_or_insert(e);
                    T::lit(estimate)
                } else {
                    failure.borrow_mut().get_or_insert(e);
                    T::zero()
                }
            }
        }
    };
    integrate_adaptive(&h, a, b, &bps, opts)
}

fn monte_carlo<T: Real, G: Fn(&[T]) -> T>(g: &SimplexIntegrand<T, G>, n: usize, t: T, tol: T) -> Result<QuadResult<T>> {
    let d = n - 1;
    let (lo, hi) = (g.lo.f64(), g.hi.f64());
    let width = hi - lo;
    let volume = width.powi(d as i32);
    let stratum = width / STRATA as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut sum = [0.0f64; STRATA];
    let mut sumsq = [0.0f64; STRATA];
    let mut count = 0usize;
    let mut point = vec![T::zero(); n];
    let tf = t.f64();
    let tol = tol.f64();
    loop {
        for j in 0..STRATA {
            for _ in 0..64 {
                let mut acc = 0.0;
                let s1 = lo + stratum * (j as f64 + rng.random::<f64>());
                point[0] = T::lit(s1);
                acc += s1;
                for p in point.iter_mut().take(d).skip(1) {
                    let s = lo + width * rng.random::<f64>();
                    *p = T::lit(s);
                    acc += s;
                }
                let last = tf - acc;
                let v = if last >= lo && last <= hi {
                    point[d] = T::lit(last);
                    (g.f)(&point).f64()
                } else {
                    0.0
                };
                sum[j] += v;
                sumsq[j] += v * v;
            }
        }
        count += STRATA * 64;
        let per = (count / STRATA) as f64;
        let mut est = 0.0;
        let mut var = 0.0;
        for j in 0..STRATA {
            let mean = sum[j] / per;
            let v = (sumsq[j] / per - mean * mean).max(0.0) / (per - 1.0).max(1.0);
            est += mean;
            var += v;
        }
        let scale = volume / STRATA as f64;
        let est = est * scale;
        let se = var.sqrt() * scale;
        if !est.is_finite() {
            return Err(crate::error::domain("simplex integrand not finite"));
        }
        if count >= MIN_MC_SAMPLES && se <= tol.max(tol * est.abs()) {
            return Ok(QuadResult { value: T::lit(est), abs_error: T::lit(se), evaluations: count });
        }
        if count >= g.max_samples {
            return Err(Error::MonteCarloVariance { estimate: est, std_error: se, samples: count });
        }
    }
}
