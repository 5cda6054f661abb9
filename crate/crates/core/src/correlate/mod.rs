//! Correlation kernels `nu_n`: numerical realization on the simplex chart,
//! closed forms, the `cosh`-weighted `K_{2,y}`, and tabulations for
//! transforms.

mod closed;
mod lattice;
mod table;

use std::cell::RefCell;
use std::sync::Arc;

use serde::Serialize;

pub use closed::{gaussian_constant, laguerre_constant, nu_closed};
pub use lattice::{Lattice, LATTICE_HALF_WIDTH, LATTICE_STEP};
pub use table::Tabulation;

use crate::error::{precondition, Error, Result};
use crate::kernels::{KernelId, Parity, WeightKernel};
use crate::quad::{integrate_adaptive, integrate_simplex, AdaptiveOptions, Decay, SimplexIntegrand, Support};
use crate::specfun::factorial;

/// Default quadrature tolerance for numerically realized kernels.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Scaling convention for `nu_n`.
///
/// `Transform` divides the chart integral by `n!`, the convention under
/// which `W_n(Ff) = +-F(nu_n)`, `int nu_n = det[mu_{i+j}]` and the Gaussian
/// and Laguerre constants hold. `Simplex` is the bare chart integral
/// `int prod_{i<j} (s_i - s_j)^2 prod w(s_i) ds_1..ds_{n-1}`, in which the box
/// kernel gives `(2-|t|)^3/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    #[default]
    Transform,
    Simplex,
}

impl Normalization {
    /// Multiplier applied to the chart integral.
    pub fn factor(self, n: usize) -> f64 {
        match self {
            Normalization::Transform => 1.0 / factorial::<f64>(n),
            Normalization::Simplex => 1.0,
        }
    }
}

/// How a correlation kernel is evaluated.
#[derive(Debug, Clone)]
pub enum Realization {
    Closed,
    Numeric { tol: f64 },
    Lattice(Arc<Lattice>),
}

/// `t -> cosh(y t) nu_n(w; t)` for a weight kernel `w` (`y = 0` gives `nu_n`).
#[derive(Debug, Clone)]
pub struct CorrelationKernel {
    base: WeightKernel,
    n: usize,
    norm: Normalization,
    realization: Realization,
    cosh_y: f64,
}

fn vandermonde_sq(s: &[f64]) -> f64 {
    let mut v = 1.0;
    for i in 0..s.len() {
        for j in (i + 1)..s.len() {
            let d = s[i] - s[j];
            v *= d * d;
        }
    }
    v
}

/// Box holding every coordinate of the chart integrand.
fn chart_box(k: &WeightKernel, n: usize, tol: f64) -> Result<(f64, f64)> {
    let p = 2 * (n.max(1) - 1) as i32;
    let f = k.weighted(move |t| (1.0 + t * t).powi(p / 2 + 1));
    let (lo, hi, _) = f.truncation((tol * 1e-3).max(1e-300))?;
    Ok((lo, hi))
}

/// `nu_n(w; t)` by quadrature over the simplex chart, in the given
/// normalization. `n = 1` returns `w(t)`.
pub fn nu_numeric_with(k: &WeightKernel, n: usize, t: f64, tol: f64, norm: Normalization) -> Result<f64> {
    if n == 0 {
        return Err(precondition("correlation order must be >= 1"));
    }
    if n == 1 {
        return Ok(k.evaluate(t));
    }
    let (lo, hi) = chart_box(k, n, tol)?;
    let g = |s: &[f64]| {
        let mut w = 1.0;
        for &x in s {
            w *= k.evaluate(x);
            if w == 0.0 {
                return 0.0;
            }
        }
        w * vandermonde_sq(s)
    };
    let integrand = SimplexIntegrand::new(g, lo, hi)
        .with_kinks(k.kinks())
        .with_smooth_endpoints(k.singular_endpoints());
    Ok(integrate_simplex(&integrand, n, t, tol)?.value * norm.factor(n))
}

/// `nu_n(w; t)` by quadrature, transform normalization.
pub fn nu_numeric(k: &WeightKernel, n: usize, t: f64, tol: f64) -> Result<f64> {
    nu_numeric_with(k, n, t, tol, Normalization::Transform)
}

fn has_closed_form(id: KernelId, n: usize) -> bool {
    match id {
        KernelId::Gaussian | KernelId::Laguerre { .. } => n >= 1,
        KernelId::RiemannPhi => false,
        _ => n == 2,
    }
}

impl CorrelationKernel {
    /// Numerically realized `nu_n` with quadrature tolerance `tol`.
    pub fn numeric(base: &WeightKernel, n: usize, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(precondition("correlation order must be >= 1"));
        }
        if !(tol > 0.0) {
            return Err(precondition("tolerance must be positive"));
        }
        Ok(Self { base: base.clone(), n, norm: Normalization::Transform, realization: Realization::Numeric { tol }, cosh_y: 0.0 })
    }

    /// Closed-form `nu_n` of an unmodulated catalog kernel.
    pub fn closed(base: &WeightKernel, n: usize) -> Result<Self> {
        if !base.is_plain() || !has_closed_form(base.id(), n) {
            return Err(Error::NoClosedForm { kernel: base.spec_string(), n });
        }
        Ok(Self { base: base.clone(), n, norm: Normalization::Transform, realization: Realization::Closed, cosh_y: 0.0 })
    }

    /// `nu_2` of the Riemann kernel on the uniform lattice, interpolated
    /// between nodes.
    pub fn phi_lattice() -> Result<Self> {
        let base = crate::kernels::make_kernel(KernelId::RiemannPhi)?;
        Ok(Self {
            base,
            n: 2,
            norm: Normalization::Transform,
            realization: Realization::Lattice(Arc::new(Lattice::phi_nu2())),
            cosh_y: 0.0,
        })
    }

    /// Closed form when the catalog has one, the lattice for the Riemann
    /// kernel at `n = 2`, quadrature otherwise.
    pub fn best(base: &WeightKernel, n: usize, tol: f64) -> Result<Self> {
        if base.is_plain() && has_closed_form(base.id(), n) {
            Self::closed(base, n)
        } else if base.is_plain() && base.id() == KernelId::RiemannPhi && n == 2 {
            Self::phi_lattice()
        } else {
            Self::numeric(base, n, tol)
        }
    }

    pub fn with_normalization(mut self, norm: Normalization) -> Self {
        self.norm = norm;
        self
    }

    pub fn base(&self) -> &WeightKernel {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn normalization(&self) -> Normalization {
        self.norm
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// The `y` of the `cosh(y t)` weight, zero for plain `nu_n`.
    pub fn cosh_y(&self) -> f64 {
        self.cosh_y
    }

    /// Support: `n` times the base support.
    pub fn support(&self) -> Support<f64> {
        let nf = self.n as f64;
        match self.base.support() {
            Support::Interval(a, b) => Support::Interval(nf * a, nf * b),
            Support::HalfLine(a) => Support::HalfLine(nf * a),
            Support::WholeLine => Support::WholeLine,
        }
    }

    pub fn parity(&self) -> Parity {
        match self.base.parity() {
            Parity::Even => Parity::Even,
            Parity::Odd if self.n % 2 == 0 => Parity::Even,
            Parity::Odd => Parity::Odd,
            Parity::None => Parity::None,
        }
    }

    /// Points where `nu_n` may fail to be smooth: sums of `n` base kinks.
    pub fn kinks(&self) -> Vec<f64> {
        let knots = self.base.kinks();
        if knots.is_empty() {
            return Vec::new();
        }
        let mut sums = vec![0.0];
        for _ in 0..self.n {
            let mut next: Vec<f64> = sums.iter().flat_map(|s| knots.iter().map(move |k| s + k)).collect();
            next.sort_by(f64::total_cmp);
            next.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            sums = next;
        }
        sums
    }

    /// `cosh(y t) nu_n(t)`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        let nu = match &self.realization {
            Realization::Closed => nu_closed(self.base.id(), self.n, t, self.norm)?,
            Realization::Numeric { tol } => nu_numeric_with(&self.base, self.n, t, *tol, self.norm)?,
            Realization::Lattice(l) => l.interpolate(t) * self.norm.factor(2),
        };
        Ok(if self.cosh_y == 0.0 { nu } else { (self.cosh_y * t).cosh() * nu })
    }

    /// Finite interval carrying the kernel to within `tol`.
    pub fn range(&self, tol: f64) -> Result<(f64, f64)> {
        let nf = self.n as f64;
        if let Realization::Lattice(l) = &self.realization {
            return Ok((-l.half_width(), l.half_width()));
        }
        let (lo, hi) = match self.base.support() {
            Support::Interval(a, b) => (a, b),
            _ => chart_box(&self.base, self.n, tol)?,
        };
        Ok((nf * lo, nf * hi))
    }

    fn quad_tol(&self) -> f64 {
        match &self.realization {
            Realization::Numeric { tol } => *tol,
            _ => 1e-16,
        }
    }

    /// Values on a composite 21-point Kronrod node set (or on the lattice),
    /// fine enough for transforms up to frequency `x_max`.
    pub fn tabulate(&self, x_max: f64) -> Result<Tabulation> {
        if let Realization::Lattice(l) = &self.realization {
            return Ok(Tabulation::from_lattice(l, self.cosh_y, self.norm.factor(2)));
        }
        let (lo, hi) = self.range(self.quad_tol())?;
        let max_len = (4.0 / x_max.abs().max(1e-9)).min(0.5);
        let node_err = match self.realization {
            Realization::Numeric { tol } => tol,
            _ => 0.0,
        };
        let tab = Tabulation::build(lo, hi, &self.kinks(), max_len, node_err, |t| self.evaluate(t))?;
        if self.support().is_bounded() {
            return Ok(tab);
        }
        // Mass cut off beyond the range, from the edge values and the decay length.
        let edge = self.evaluate(lo)?.abs() + self.evaluate(hi)?.abs();
        Ok(tab.with_tail(edge * 2.0 * self.n as f64 * self.base.decay_width()))
    }

    /// `int cosh(y t) nu_n(t) dt` by adaptive quadrature over the support.
    pub fn mass(&self, tol: f64) -> Result<f64> {
        if let Realization::Lattice(_) = &self.realization {
            return Ok(self.tabulate(1.0)?.integral().0);
        }
        let (lo, hi) = self.range(tol)?;
        let failure = RefCell::new(None);
        let f = |t: f64| match self.evaluate(t) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        };
        let opts = AdaptiveOptions::new(tol).with_smooth_endpoints(self.base.singular_endpoints());
        let r = integrate_adaptive(&f, lo, hi, &self.kinks(), opts)?;
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(r.value),
        }
    }
}

/// `K_{2,y}(t) = cosh(t y) nu_2(k; t)` for an even kernel.
///
/// The Riemann kernel uses the precomputed lattice; other kernels are
/// integrated on demand with tolerance `tol`.
pub fn build_k2y(k: &WeightKernel, y: f64, tol: f64) -> Result<CorrelationKernel> {
    if !k.is_even() {
        return Err(precondition(format!("K_2,y needs an even kernel, got {}", k.spec_string())));
    }
    if !y.is_finite() {
        return Err(Error::Decay(format!("cosh weight with y = {y}")));
    }
    if k.decay() == Decay::Exponential && y.abs() * k.decay_width() >= 1.0 {
        return Err(Error::Decay(format!("cosh({y} t) outgrows the exponential decay of {}", k.spec_string())));
    }
    let mut ck = if k.id() == KernelId::RiemannPhi && k.is_plain() {
        CorrelationKernel::phi_lattice()?
    } else {
        CorrelationKernel::numeric(k, 2, tol)?
    };
    ck.cosh_y = y;
    Ok(ck)
}

/// `int nu_n`, which equals the Hankel determinant of the moments.
pub fn mass(ck: &CorrelationKernel, tol: f64) -> Result<f64> {
    ck.mass(tol)
}

#[cfg(test)]
mod tests;
